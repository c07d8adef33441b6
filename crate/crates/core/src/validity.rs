//! Abstract dimension sequences: the `e_n` recursion, validity verdicts and
//! exact evaluation of both sides of the Golod-Shafarevich equality.
//!
//! Conventions: `b_n` are the Jennings polynomial coefficients, `c_n` their
//! partial sums (`c_0 = 0`, `c_1 = 1`), and
//! `e_n = sum_{i>=0} r_i c_{n-i} - d c_{n-1} - 1` with `r_0 = 1` and
//! `c_n = 0` for `n <= 0`. Every sequence below is indexed from `n = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::bounds::{upper_caps, CapProfile};
use crate::error::{Error, Result};
use crate::gs_check::{gs_lhs_poly, RelationProfile};
use crate::jennings::{jennings_transform, DimensionSequence, JenningsData};
use crate::series::ExactPoly;

/// `e_0, ..., e_horizon` from the Jennings data of `a`.
pub fn e_sequence(a: &DimensionSequence, profile: &RelationProfile, horizon: usize) -> Vec<BigInt> {
    e_from_c(&jennings_transform(a), profile, horizon)
}

fn e_from_c(j: &JenningsData, profile: &RelationProfile, horizon: usize) -> Vec<BigInt> {
    let counts = profile.counts();
    let d = BigInt::from(profile.d);
    let mut e = Vec::with_capacity(horizon + 1);
    e.push(BigInt::zero());
    for n in 1..=horizon as i64 {
        let mut v = j.c_at(n) - &d * j.c_at(n - 1) - 1;
        for (&k, &r_k) in &counts {
            v += j.c_at(n - k as i64) * r_k;
        }
        e.push(v);
    }
    e
}

/// Smallest horizon at which `c` and `e` are guaranteed constant.
pub fn stabilization_horizon(a: &DimensionSequence, profile: &RelationProfile) -> usize {
    a.stabilization_index() + profile.max_level().unwrap_or(0) as usize + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `a_1` must equal the generator rank `d`.
    GeneratorRank,
    Cap,
    CMonotone,
    ENonnegative,
    Stabilization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ValidityVerdict {
    Valid,
    Invalid { criterion: Criterion, index: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityReport {
    #[serde(rename = "p")]
    pub prime: u32,
    pub a: Vec<u32>,
    pub profile: RelationProfile,
    pub horizon: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub b: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub c: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub e: Vec<BigInt>,
    /// Present when the profile has the shape the caps were proven for.
    pub caps: Option<CapProfile>,
    pub caps_ok: bool,
    pub c_monotone: bool,
    pub e_nonnegative: bool,
    pub stabilized: bool,
    #[serde(serialize_with = "ser_bigint")]
    pub stable_c: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub stable_e: BigInt,
    pub order_exponent: u64,
    #[serde(flatten)]
    pub verdict: ValidityVerdict,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == ValidityVerdict::Valid
    }
}

pub(crate) fn ser_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Caps apply to two generators, two odd relation levels, the first in level 3.
fn caps_for(a: &DimensionSequence, profile: &RelationProfile) -> Result<Option<CapProfile>> {
    let levels = profile.levels();
    let shaped = profile.d == 2
        && levels.len() == 2
        && levels[0] == 3
        && levels.iter().all(|m| m % 2 == 1);
    let p = a.prime();
    if !shaped || p < 3 {
        return Ok(None);
    }
    upper_caps(p, p - 2, levels == [3, 7]).map(Some)
}

pub fn is_valid(a: &DimensionSequence, profile: &RelationProfile) -> Result<ValidityReport> {
    is_valid_with_horizon(a, profile, stabilization_horizon(a, profile))
}

/// Validity report computed through `horizon`, which must reach the
/// stabilization bound `N + max level + 1`.
pub fn is_valid_with_horizon(
    a: &DimensionSequence,
    profile: &RelationProfile,
    horizon: usize,
) -> Result<ValidityReport> {
    let required = stabilization_horizon(a, profile);
    if horizon < required {
        return Err(Error::HorizonTooSmall { horizon, required });
    }
    let j = jennings_transform(a);
    let b: Vec<BigInt> = (0..=horizon as i64).map(|n| j.b_at(n)).collect();
    let c: Vec<BigInt> = (0..=horizon as i64).map(|n| j.c_at(n)).collect();
    let e = e_from_c(&j, profile, horizon);

    let mut failures: Vec<(Criterion, usize)> = Vec::new();

    if a.get(1) != profile.d {
        failures.push((Criterion::GeneratorRank, 1));
    }
    let caps = caps_for(a, profile)?;
    let mut caps_ok = a.get(1) == profile.d;
    if let Some(cp) = &caps {
        if let Some((n, _)) = cp.caps.iter().find(|(&n, &cap)| a.get(n) > cap) {
            failures.push((Criterion::Cap, *n as usize));
            caps_ok = false;
        }
    }

    let c_bad = (1..c.len()).find(|&n| c[n] < c[n - 1] || c[n].is_negative());
    if let Some(n) = c_bad {
        failures.push((Criterion::CMonotone, n));
    }

    let e_bad = (1..e.len()).find(|&n| e[n].is_negative());
    if let Some(n) = e_bad {
        failures.push((Criterion::ENonnegative, n));
    }

    let stable_c = j.group_order();
    let stable_e = BigInt::from(profile.r() + 1) * &stable_c - BigInt::from(profile.d) * &stable_c - 1;
    let stab_bad = (a.stabilization_index() + 1..=horizon)
        .find(|&n| c[n] != stable_c || (n >= required && e[n] != stable_e));
    if let Some(n) = stab_bad {
        failures.push((Criterion::Stabilization, n));
    }

    let verdict = failures
        .first()
        .map(|&(criterion, index)| ValidityVerdict::Invalid { criterion, index })
        .unwrap_or(ValidityVerdict::Valid);

    Ok(ValidityReport {
        prime: a.prime(),
        a: a.to_vec(),
        profile: profile.clone(),
        horizon,
        b,
        c,
        e,
        caps,
        caps_ok,
        c_monotone: c_bad.is_none(),
        e_nonnegative: e_bad.is_none(),
        stabilized: stab_bad.is_none(),
        stable_c,
        stable_e,
        order_exponent: a.order_exponent(),
        verdict,
    })
}

/// The `e` sequence read as the defect in `sum r_k t^k - d t + 1 = sum b_n t^n`;
/// all zeros through `horizon` exactly when that identity holds there.
pub fn mildness_defect(
    a: &DimensionSequence,
    profile: &RelationProfile,
    horizon: usize,
) -> Vec<BigInt> {
    e_sequence(a, profile, horizon)
}

/// Both sides of the equality at `t`, from the Jennings data of `a` and the
/// recursion for `e`.
pub fn gs_equality_eval(
    a: &DimensionSequence,
    profile: &RelationProfile,
    t: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let j = jennings_transform(a);
    let horizon = stabilization_horizon(a, profile);
    let c: Vec<BigInt> = (0..=horizon as i64).map(|n| j.c_at(n)).collect();
    let e = e_from_c(&j, profile, horizon);
    gs_equality_from_data(profile, &j.jennings_poly, &c, &e, t)
}

/// Both sides of the equality at `t` from raw `c_0..c_H` and `e_0..e_H`,
/// with `c_n = c_H` and `e_n = e_H` assumed for `n > H`.
///
/// The infinite tails are summed as geometric series. At `t = 0` the
/// quotient `sum e_n t^n / sum c_n t^n` is replaced by its limit `e_1 / c_1`.
pub fn gs_equality_from_data(
    profile: &RelationProfile,
    jennings_poly: &ExactPoly,
    c: &[BigInt],
    e: &[BigInt],
    t: &BigRational,
) -> Result<(BigRational, BigRational)> {
    if t.is_negative() || t >= &BigRational::one() {
        return Err(Error::InvalidArgument(format!("t = {t} is outside [0, 1)")));
    }
    let h = c.len().min(e.len());
    if h < 3 {
        return Err(Error::NotStabilized("need data through n = 2 at least".into()));
    }
    let h = h - 1;
    let m = profile.max_level().unwrap_or(0) as usize;
    if h <= m {
        return Err(Error::NotStabilized(format!("data through n = {h} cannot cover level {m}")));
    }
    if c[h - m..=h].iter().any(|x| x != &c[h]) {
        return Err(Error::NotStabilized(format!(
            "c is not constant on n = {}..={h}",
            h - m
        )));
    }
    let steady_e = (BigInt::from(profile.r() + 1) - BigInt::from(profile.d)) * &c[h] - 1;
    if e[h] != steady_e {
        return Err(Error::NotStabilized(format!(
            "e_{h} = {} differs from its limit {steady_e}",
            e[h]
        )));
    }

    let lhs = gs_lhs_poly(profile).eval(t);
    let pn_product = jennings_poly.eval(t).recip();
    if t.is_zero() {
        let ratio = BigRational::new(e[1].clone(), c[1].clone());
        return Ok((lhs, pn_product + ratio));
    }

    let series = |v: &[BigInt]| {
        let mut sum = BigRational::zero();
        let mut tp = BigRational::one();
        for x in v.iter().take(h + 1).skip(1) {
            tp *= t;
            sum += &tp * BigRational::from_integer(x.clone());
        }
        let tail = (tp * t) / (BigRational::one() - t);
        sum + tail * BigRational::from_integer(v[h].clone())
    };
    let rhs = pn_product + series(e) / series(c);
    Ok((lhs, rhs))
}

/// `|G| = p^A` and `e_n` limit `(r+1-d)|G| - 1`.
pub fn terminal_values(prime: u32, order_exponent: u64, profile: &RelationProfile) -> (BigInt, BigInt) {
    let order = BigInt::from(prime).pow(order_exponent as u32);
    let e = (BigInt::from(profile.r() + 1) - BigInt::from(profile.d)) * &order - 1;
    (order, e)
}
