//! Golod-Shafarevich inequality checks on exact polynomials.
//!
//! A relation profile determines the left-hand side
//! `sum_k r_k t^k - d t + 1`. For a finite p-group the right-hand side
//! `prod_n P_n(t)^{a_n}` is the reciprocal of the Jennings polynomial, so
//! every inequality below reduces to polynomial positivity on `(0, 1)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jennings::{jennings_transform, DimensionSequence};
use crate::series::{positive_on_open_unit_interval, ExactPoly, PositivityReport};

/// Generator rank and relation levels of a minimal presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelationProfile {
    pub d: u32,
    /// Sorted relation levels, each at least 2.
    levels: Vec<u32>,
}

impl RelationProfile {
    pub fn new(d: u32, mut levels: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = levels.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidArgument(format!(
                "relation level {bad} < 2; a minimal presentation has no relations in level 0 or 1"
            )));
        }
        levels.sort_unstable();
        Ok(Self { d, levels })
    }

    /// Two generators with relations in levels 3 and 7.
    pub fn zt37() -> Self {
        Self { d: 2, levels: vec![3, 7] }
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn r(&self) -> u32 {
        self.levels.len() as u32
    }

    /// `r_k` with the convention `r_0 = 1`.
    pub fn r_k(&self, k: u32) -> u32 {
        if k == 0 {
            1
        } else {
            self.levels.iter().filter(|&&m| m == k).count() as u32
        }
    }

    /// `(k, r_k)` for each level that occurs, `k >= 2`.
    pub fn counts(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &m in &self.levels {
            *out.entry(m).or_insert(0) += 1;
        }
        out
    }

    pub fn max_level(&self) -> Option<u32> {
        self.levels.last().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Compare against `prod_n P_n(t)^{a_n}` exactly.
    Exact,
    /// Compare against the smaller `prod_n (1 - t^n)^{a_n}`.
    Relaxed,
}

/// `sum_k r_k t^k - d t + 1`.
pub fn gs_lhs_poly(profile: &RelationProfile) -> ExactPoly {
    let deg = profile.max_level().unwrap_or(1) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    coeffs[0] = BigInt::one();
    coeffs[1] = -BigInt::from(profile.d);
    for &m in profile.levels() {
        coeffs[m as usize] += 1;
    }
    ExactPoly::from_bigints(&coeffs)
}

/// `prod_n (1 - t^n)^{a_n}`.
pub fn relaxed_product(a: &DimensionSequence) -> ExactPoly {
    let mut f = vec![BigInt::one()];
    for (n, count) in a.iter() {
        let n = n as usize;
        for _ in 0..count {
            let mut h = f.clone();
            h.resize(f.len() + n, BigInt::zero());
            for (k, x) in f.iter().enumerate() {
                h[k + n] -= x;
            }
            f = h;
        }
    }
    ExactPoly::from_bigints(&f)
}

/// The polynomial whose positivity on `(0, 1)` is the requested inequality.
pub fn inequality_poly(
    profile: &RelationProfile,
    a: &DimensionSequence,
    mode: CheckMode,
) -> ExactPoly {
    let lhs = gs_lhs_poly(profile);
    match mode {
        CheckMode::Exact => {
            let j = jennings_transform(a);
            &(&lhs * &j.jennings_poly) - &ExactPoly::one()
        }
        CheckMode::Relaxed => &lhs - &relaxed_product(a),
    }
}

pub fn check_inequality(
    profile: &RelationProfile,
    a: &DimensionSequence,
    mode: CheckMode,
) -> Result<PositivityReport> {
    positive_on_open_unit_interval(&inequality_poly(profile, a, mode))
}

/// `t^{m1} + t^{m2} - 2t + 1`.
fn ztype_poly(m1: u32, m2: u32) -> ExactPoly {
    gs_lhs_poly(&RelationProfile { d: 2, levels: vec![m1, m2] })
}

/// One examined level pair and its positivity verdict.
#[derive(Clone, Debug, Serialize)]
pub struct ZtypeCase {
    pub levels: (u32, u32),
    pub report: PositivityReport,
}

/// Every odd pair `3 <= m1 <= m2 <= max_level` the search actually tested.
///
/// Raising either level lowers the polynomial pointwise on `(0, 1)`, so once
/// `(m1, m2)` is violated the rest of that row is skipped, and once
/// `(m1, m1)` is violated no larger `m1` is tried.
pub fn examine_ztypes(max_level: u32) -> Result<Vec<ZtypeCase>> {
    if max_level < 3 {
        return Err(Error::InvalidArgument(format!("max level {max_level} < 3")));
    }
    let mut cases = Vec::new();
    for m1 in (3..=max_level).step_by(2) {
        let mut row_len = 0;
        for m2 in (m1..=max_level).step_by(2) {
            let report = positive_on_open_unit_interval(&ztype_poly(m1, m2))?;
            let holds = report.holds();
            cases.push(ZtypeCase { levels: (m1, m2), report });
            row_len += 1;
            if !holds {
                break;
            }
        }
        if row_len == 1 && !cases.last().unwrap().report.holds() {
            break;
        }
    }
    Ok(cases)
}

/// Odd level pairs compatible with a finite 2-generated 2-related group.
pub fn classify_ztypes(max_level: u32) -> Result<BTreeSet<(u32, u32)>> {
    Ok(examine_ztypes(max_level)?
        .into_iter()
        .filter(|c| c.report.holds())
        .map(|c| c.levels)
        .collect())
}

/// `d^m (m-1)^{m-1} / m^m`; finiteness with all relations in level `>= m`
/// needs `r` strictly above this.
pub fn medgs_threshold(d: u32, m: u32) -> Result<BigRational> {
    if d < 1 || m < 2 {
        return Err(Error::InvalidArgument(format!("threshold needs d >= 1, m >= 2 (got d={d}, m={m})")));
    }
    let num = BigInt::from(d).pow(m) * BigInt::from(m - 1).pow(m - 1);
    Ok(BigRational::new(num, BigInt::from(m).pow(m)))
}

pub fn finiteness_possible(d: u32, r: u32, m: u32) -> Result<bool> {
    Ok(BigRational::from_integer(r.into()) > medgs_threshold(d, m)?)
}

/// Value of `r t^m - d t + 1` at a rational approximation of
/// `t* = (d / (m r))^{1/(m-1)}`, the minimiser of that polynomial.
///
/// Purely diagnostic: `t*` is approximated to within `2^-bits`.
pub fn threshold_probe(d: u32, r: u32, m: u32, bits: u32) -> Result<(BigRational, BigRational)> {
    if r == 0 || m < 2 {
        return Err(Error::InvalidArgument("probe needs r >= 1 and m >= 2".into()));
    }
    let target = BigRational::new(d.into(), (m * r).into());
    let mut lo = BigRational::zero();
    let mut hi = if target > BigRational::one() { target.clone() } else { BigRational::one() };
    let two = BigRational::from_integer(2.into());
    for _ in 0..bits {
        let mid = (&lo + &hi) / &two;
        if mid.clone().pow(m as i32 - 1) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (&lo + &hi) / &two;
    let f = &(&ExactPoly::monomial(BigRational::from_integer(r.into()), m as usize)
        - &ExactPoly::monomial(BigRational::from_integer(d.into()), 1))
        + &ExactPoly::one();
    let value = f.eval(&t);
    Ok((t, value))
}

/// Positivity of the strengthened inequality
/// `LHS > prod P_n^{a_n} + (1-d+r)(1-p^{-A}) t^{N+m}`, multiplied through by
/// the Jennings polynomial.
pub fn strict_corollary_check(
    profile: &RelationProfile,
    a: &DimensionSequence,
    order_exponent: u64,
    m: u32,
) -> Result<PositivityReport> {
    let (d, r) = (profile.d, profile.r());
    if r < d {
        return Err(Error::InvalidHypothesis(format!(
            "strict corollary needs r >= d (got r={r}, d={d})"
        )));
    }
    let j = jennings_transform(a);
    let group_order = BigInt::from(a.prime()).pow(order_exponent as u32);
    let k = BigRational::from_integer(BigInt::from(1 + r - d))
        * (BigRational::one() - BigRational::new(BigInt::one(), group_order));
    let correction = ExactPoly::monomial(k, j.stabilization_index + m as usize);
    let lhs = gs_lhs_poly(profile);
    let f = &(&(&lhs * &j.jennings_poly) - &ExactPoly::one()) - &(&correction * &j.jennings_poly);
    positive_on_open_unit_interval(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lhs_examples() {
        assert_eq!(
            gs_lhs_poly(&RelationProfile::zt37()),
            ExactPoly::from_ints(&[1, -2, 0, 1, 0, 0, 0, 1])
        );
        let p33 = RelationProfile::new(2, vec![3, 3]).unwrap();
        assert_eq!(gs_lhs_poly(&p33), ExactPoly::from_ints(&[1, -2, 0, 2]));
        let trivial = RelationProfile::new(0, vec![]).unwrap();
        assert_eq!(gs_lhs_poly(&trivial), ExactPoly::one());
        assert!(RelationProfile::new(2, vec![1, 3]).is_err());
    }

    #[test]
    fn profile_counts() {
        let p = RelationProfile::new(2, vec![3, 2, 3]).unwrap();
        assert_eq!(p.levels(), &[2, 3, 3]);
        assert_eq!(p.r_k(0), 1);
        assert_eq!(p.r_k(1), 0);
        assert_eq!(p.r_k(3), 2);
        assert_eq!(p.max_level(), Some(3));
    }

    #[test]
    fn relaxed_checks_from_the_order_bound() {
        let p11 = |v: &[u32]| DimensionSequence::from_slice(11, v).unwrap();
        let zt = RelationProfile::zt37();

        let r = check_inequality(&zt, &p11(&[2]), CheckMode::Relaxed).unwrap();
        assert!(!r.holds());
        let f = inequality_poly(&zt, &p11(&[2]), CheckMode::Relaxed);
        assert!(f.eval(&q(1, 2)).is_negative());

        let a5 = p11(&[2, 1, 1, 1, 2, 2, 3, 5, 5]);
        let r = check_inequality(&zt, &a5, CheckMode::Relaxed).unwrap();
        assert!(!r.holds());
        let f = inequality_poly(&zt, &a5, CheckMode::Relaxed);
        assert!(f.eval(&q(55, 100)).is_negative());

        let a6 = p11(&[2, 1, 1, 1, 2, 2, 3, 5, 6]);
        assert!(check_inequality(&zt, &a6, CheckMode::Relaxed).unwrap().holds());
    }

    #[test]
    fn ztypes() {
        let expected: BTreeSet<_> = [(3, 3), (3, 5), (3, 7)].into_iter().collect();
        assert_eq!(classify_ztypes(21).unwrap(), expected);
        assert_eq!(classify_ztypes(9).unwrap(), expected);
        let f39 = ztype_poly(3, 9);
        assert!(!positive_on_open_unit_interval(&f39).unwrap().holds());
        assert!(f39.eval(&q(65, 100)).is_negative());
        let f55 = ztype_poly(5, 5);
        assert_eq!(f55.eval(&q(2, 3)), q(-17, 243));
    }

    #[test]
    fn thresholds() {
        assert_eq!(medgs_threshold(2, 2).unwrap(), q(1, 1));
        assert_eq!(medgs_threshold(3, 3).unwrap(), q(4, 1));
        assert_eq!(medgs_threshold(2, 3).unwrap(), q(32, 27));
        assert!(!finiteness_possible(3, 3, 3).unwrap());
        assert!(finiteness_possible(2, 2, 3).unwrap());
        let (t, v) = threshold_probe(3, 3, 3, 40).unwrap();
        assert!((t.clone() * &t - q(1, 3)).abs() < q(1, 1_000_000));
        assert!(v.is_negative());
    }

    #[test]
    fn strict_corollary_cyclic_three() {
        let profile = RelationProfile::new(1, vec![3]).unwrap();
        let a = DimensionSequence::from_slice(3, &[1]).unwrap();
        let r = strict_corollary_check(&profile, &a, 1, 3).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn strict_corollary_needs_r_at_least_d() {
        let profile = RelationProfile::new(2, vec![3]).unwrap();
        let a = DimensionSequence::from_slice(3, &[2]).unwrap();
        assert!(matches!(
            strict_corollary_check(&profile, &a, 2, 3),
            Err(Error::InvalidHypothesis(_))
        ));
    }
}
