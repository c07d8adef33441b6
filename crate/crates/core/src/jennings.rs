//! Jennings' identity between dimension factors and augmentation-ideal
//! filtration dimensions.
//!
//! For a finite p-group with dimension factors `a_n`, the polynomial
//! `prod_n (1 + t^n + ... + t^{(p-1)n})^{a_n}` has `b_n = dim I^n / I^{n+1}`
//! as its coefficients, and `c_n = dim F_p[G] / I^n` is the partial sum
//! `b_0 + ... + b_{n-1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::check_prime;
use crate::series::{series_inverse, ExactPoly, TruncSeries};

/// Finitely supported sequence of dimension factors `a_1, a_2, ...` for a prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimensionSequence {
    prime: u32,
    /// Only nonzero entries are stored.
    entries: BTreeMap<u32, u32>,
}

impl DimensionSequence {
    pub fn new(prime: u32, entries: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        check_prime(prime)?;
        let mut map = BTreeMap::new();
        for (n, a) in entries {
            if n == 0 {
                return Err(Error::InvalidArgument("dimension factors are indexed from 1".into()));
            }
            if a > 0 {
                *map.entry(n).or_insert(0) += a;
            }
        }
        Ok(Self { prime, entries: map })
    }

    /// Builds `a_1 = values[0], a_2 = values[1], ...`.
    pub fn from_slice(prime: u32, values: &[u32]) -> Result<Self> {
        Self::new(prime, values.iter().enumerate().map(|(i, &a)| (i as u32 + 1, a)))
    }

    pub fn empty(prime: u32) -> Result<Self> {
        Self::new(prime, [])
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn get(&self, n: u32) -> u32 {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    /// Nonzero entries `(n, a_n)` in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.iter().map(|(&n, &a)| (n, a))
    }

    /// Largest index with a nonzero factor.
    pub fn max_index(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// `sum a_n`, the exponent of `|G| = p^(sum a_n)`.
    pub fn order_exponent(&self) -> u64 {
        self.entries.values().map(|&a| a as u64).sum()
    }

    /// `N = (p-1) sum n a_n`, the degree of the Jennings polynomial.
    pub fn stabilization_index(&self) -> usize {
        let weighted: u64 = self.entries.iter().map(|(&n, &a)| n as u64 * a as u64).sum();
        (self.prime as usize - 1) * weighted as usize
    }

    /// `a_1, ..., a_len` including zeros.
    pub fn dense(&self, len: u32) -> Vec<u32> {
        (1..=len).map(|n| self.get(n)).collect()
    }

    /// `a_1, ..., a_max` including zeros, empty for the trivial sequence.
    pub fn to_vec(&self) -> Vec<u32> {
        self.dense(self.max_index().unwrap_or(0))
    }

    /// Copy with `a_n` replaced by `value`.
    pub fn with(&self, n: u32, value: u32) -> Self {
        let mut out = self.clone();
        if value == 0 {
            out.entries.remove(&n);
        } else {
            out.entries.insert(n, value);
        }
        out
    }
}

/// Filtration data derived from a dimension sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JenningsData {
    pub prime: u32,
    /// `prod_n P_n(t)^{-a_n}`.
    pub jennings_poly: ExactPoly,
    /// `b_0, ..., b_N`.
    pub b: Vec<BigInt>,
    /// `c_0, ..., c_{N+1}`.
    pub c: Vec<BigInt>,
    /// `N`, the degree of the Jennings polynomial.
    pub stabilization_index: usize,
    pub order_exponent: u64,
}

impl JenningsData {
    /// `b_n`, zero outside `0..=N`.
    pub fn b_at(&self, n: i64) -> BigInt {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.b.get(i).cloned())
            .unwrap_or_else(BigInt::zero)
    }

    /// `c_n` for any integer `n`: zero for `n <= 0` and `|G|` beyond `N + 1`.
    pub fn c_at(&self, n: i64) -> BigInt {
        if n <= 0 {
            return BigInt::zero();
        }
        let i = (n as usize).min(self.c.len() - 1);
        self.c[i].clone()
    }

    pub fn group_order(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.order_exponent as u32)
    }

    /// `prod_n P_n(t)^{a_n}` as a power series through degree `d`.
    pub fn pn_product_series(&self, d: usize) -> TruncSeries {
        series_inverse(&TruncSeries::from_poly(&self.jennings_poly, d))
            .expect("Jennings polynomial has constant term 1")
    }
}

/// `P_n(t)^{-1} = 1 + t^n + ... + t^{(p-1)n}`.
pub fn pn_inverse_poly(n: u32, p: u32) -> Result<ExactPoly> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("P_n needs n >= 1".into()));
    }
    let (n, p) = (n as usize, p as usize);
    let mut coeffs = vec![0i64; n * (p - 1) + 1];
    for j in 0..p {
        coeffs[j * n] = 1;
    }
    Ok(ExactPoly::from_ints(&coeffs))
}

/// Multiplies `f` by `1 + t^n + ... + t^{(p-1)n}` with a sliding window sum.
fn mul_pn_inverse(f: &[BigInt], n: usize, p: usize) -> Vec<BigInt> {
    let len = f.len() + n * (p - 1);
    let mut h = vec![BigInt::zero(); len];
    for k in 0..len {
        let mut v = if k >= n { h[k - n].clone() } else { BigInt::zero() };
        if let Some(x) = f.get(k) {
            v += x;
        }
        if k >= n * p {
            if let Some(x) = f.get(k - n * p) {
                v -= x;
            }
        }
        h[k] = v;
    }
    h
}

pub fn jennings_transform(a: &DimensionSequence) -> JenningsData {
    let p = a.prime() as usize;
    let mut b = vec![BigInt::one()];
    for (n, count) in a.iter() {
        for _ in 0..count {
            b = mul_pn_inverse(&b, n as usize, p);
        }
    }
    let stabilization_index = b.len() - 1;
    debug_assert_eq!(stabilization_index, a.stabilization_index());
    let mut c = Vec::with_capacity(b.len() + 1);
    c.push(BigInt::zero());
    let mut acc = BigInt::zero();
    for x in &b {
        acc += x;
        c.push(acc.clone());
    }
    JenningsData {
        prime: a.prime(),
        jennings_poly: ExactPoly::from_bigints(&b),
        b,
        c,
        stabilization_index,
        order_exponent: a.order_exponent(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn pn_inverse_examples() {
        assert_eq!(pn_inverse_poly(1, 3).unwrap(), ExactPoly::from_ints(&[1, 1, 1]));
        assert_eq!(pn_inverse_poly(2, 3).unwrap(), ExactPoly::from_ints(&[1, 0, 1, 0, 1]));
        assert_eq!(pn_inverse_poly(1, 2).unwrap(), ExactPoly::from_ints(&[1, 1]));
        assert_eq!(pn_inverse_poly(1, 4), Err(Error::InvalidPrime(4)));
        let f = pn_inverse_poly(3, 7).unwrap();
        assert_eq!(f.degree(), Some(18));
        assert_eq!(f.coefficient_sum(), BigRational::from_integer(7.into()));
    }

    #[test]
    fn cyclic_of_order_three() {
        let a = DimensionSequence::from_slice(3, &[1]).unwrap();
        let j = jennings_transform(&a);
        assert_eq!(j.jennings_poly, ExactPoly::from_ints(&[1, 1, 1]));
        assert_eq!(j.b, big(&[1, 1, 1]));
        assert_eq!(j.c, big(&[0, 1, 2, 3]));
        assert_eq!(j.stabilization_index, 2);
        assert_eq!(j.group_order(), BigInt::from(3));
        assert_eq!(j.c_at(-2), BigInt::zero());
        assert_eq!(j.c_at(40), BigInt::from(3));
    }

    #[test]
    fn trivial_group() {
        let j = jennings_transform(&DimensionSequence::empty(5).unwrap());
        assert_eq!(j.jennings_poly, ExactPoly::one());
        assert_eq!(j.c, big(&[0, 1]));
        assert_eq!(j.group_order(), BigInt::one());
    }

    #[test]
    fn order_27_matches_naive_product() {
        let a = DimensionSequence::from_slice(3, &[2, 1]).unwrap();
        let j = jennings_transform(&a);
        let p1 = pn_inverse_poly(1, 3).unwrap();
        let p2 = pn_inverse_poly(2, 3).unwrap();
        assert_eq!(j.jennings_poly, &(&p1 * &p1) * &p2);
        assert_eq!(j.stabilization_index, 8);
        assert_eq!(*j.c.last().unwrap(), BigInt::from(27));
    }

    #[test]
    fn series_side_inverts() {
        let a = DimensionSequence::from_slice(5, &[2, 0, 1]).unwrap();
        let j = jennings_transform(&a);
        let s = j.pn_product_series(30);
        assert!(s.mul(&TruncSeries::from_poly(&j.jennings_poly, 30)).is_one());
    }

    #[test]
    fn sequence_helpers() {
        let a = DimensionSequence::new(11, [(1, 2), (11, 1), (4, 0)]).unwrap();
        assert_eq!(a.get(4), 0);
        assert_eq!(a.max_index(), Some(11));
        assert_eq!(a.order_exponent(), 3);
        assert_eq!(a.stabilization_index(), 10 * 13);
        assert_eq!(a.dense(3), vec![2, 0, 0]);
        assert_eq!(a.with(11, 0).to_vec(), vec![2]);
        assert!(DimensionSequence::new(11, [(0, 1)]).is_err());
        assert!(DimensionSequence::from_slice(15, &[1]).is_err());
    }
}
