//! Upper and lower bounds on the dimension factors of a 2-generated,
//! 2-related group with relations in odd levels, one of them in level 3.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jennings::DimensionSequence;
use crate::primes::{check_prime, divisors, factorize};

pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Labute's count of `dim gamma_n / gamma_n^p gamma_{n+1}` for a
/// `d`-generated one-relator pro-p-group whose relation lies in level `k`.
pub fn labute_g(n: u32, d: u32, k: u32) -> Result<BigInt> {
    if n == 0 || d < 2 || k < 2 {
        return Err(Error::InvalidArgument(format!(
            "labute_g needs n >= 1, d >= 2, k >= 2 (got n={n}, d={d}, k={k})"
        )));
    }
    let mut total = BigRational::zero();
    for j in divisors(n as u64) {
        let mu = moebius(n as u64 / j);
        if mu == 0 {
            continue;
        }
        let j = j as i64;
        let k = k as i64;
        let mut inner = BigRational::zero();
        for i in 0..=(j / k) {
            // j + (1-k) i >= j/k > 0 because i <= j/k.
            let m = j + (1 - k) * i;
            let term = BigRational::new(BigInt::from(j), BigInt::from(m))
                * BigRational::from_integer(binomial(BigInt::from(m), BigInt::from(i)))
                * BigRational::from_integer(BigInt::from(d).pow((j - k * i) as u32));
            if i % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += inner * BigRational::from_integer(mu.into());
    }
    let value = total / BigRational::from_integer(n.into());
    if !value.is_integer() {
        return Err(Error::NonIntegralResult { n, d, k });
    }
    Ok(value.to_integer())
}

/// Upper bounds on `a_n` valid for `n <= validity_limit = p - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapProfile {
    pub prime: u32,
    pub caps: BTreeMap<u32, u32>,
    pub validity_limit: u32,
    /// Set when the level-(3,7) refinement `a_7 <= 3` was applied.
    pub ztype_refined: bool,
}

impl CapProfile {
    pub fn get(&self, n: u32) -> Option<u32> {
        self.caps.get(&n).copied()
    }

    pub fn n_max(&self) -> u32 {
        self.caps.keys().next_back().copied().unwrap_or(0)
    }

    pub fn as_vec(&self) -> Vec<u32> {
        self.caps.values().copied().collect()
    }
}

/// Cap on `a_n` for a single index, requiring `n < p - 1`.
pub fn interesting_cap(n: u32, p: u32, ztype_37: bool) -> Result<u32> {
    check_prime(p)?;
    if n + 1 >= p {
        return Err(Error::RangeExceeded { n_max: n, limit: p - 1 });
    }
    Ok(match n {
        1 => 2,
        7 if ztype_37 => 3,
        _ => labute_g(n, 2, 3)?
            .to_u32()
            .ok_or_else(|| Error::InvalidArgument(format!("cap for n={n} overflows")))?,
    })
}

pub fn upper_caps(p: u32, n_max: u32, ztype_37: bool) -> Result<CapProfile> {
    check_prime(p)?;
    if n_max + 1 >= p {
        return Err(Error::RangeExceeded { n_max, limit: p - 1 });
    }
    let caps = (1..=n_max)
        .map(|n| interesting_cap(n, p, ztype_37).map(|c| (n, c)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CapProfile {
        prime: p,
        caps,
        validity_limit: p - 2,
        ztype_refined: ztype_37 && n_max >= 7,
    })
}

/// Dimension factors forced by an abelianization of type `(p^a, p^b)`.
pub fn lower_bounds(p: u32, a: u32, b: u32) -> Result<DimensionSequence> {
    check_prime(p)?;
    if a < 1 || b < a {
        return Err(Error::InvalidArgument(format!(
            "abelianization type needs 1 <= a <= b (got a={a}, b={b})"
        )));
    }
    let pow = |c: u32| {
        (p as u64)
            .checked_pow(c)
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| Error::InvalidArgument(format!("index {p}^{c} overflows")))
    };
    let mut entries = Vec::new();
    for c in 0..a {
        entries.push((pow(c)?, 2));
    }
    for c in a..b {
        entries.push((pow(c)?, 1));
    }
    DimensionSequence::new(p, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_values() {
        let mu: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn labute_table() {
        let g: Vec<BigInt> = (1..=9).map(|n| labute_g(n, 2, 3).unwrap()).collect();
        let expected: Vec<BigInt> = [2, 1, 1, 1, 2, 2, 4, 5, 8].iter().map(|&x| x.into()).collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn labute_first_term_is_d() {
        for d in 2..6 {
            for k in 2..8 {
                assert_eq!(labute_g(1, d, k).unwrap(), BigInt::from(d));
            }
        }
    }

    /// Labute's formula is integral across a grid of parameters.
    #[test]
    fn labute_always_integral() {
        for n in 1..=20 {
            for d in 2..=4 {
                for k in 2..=7 {
                    let g = labute_g(n, d, k).unwrap();
                    assert!(g >= BigInt::zero(), "g({n},{d},{k}) = {g}");
                }
            }
        }
    }

    /// With the relation pushed past level n, g_n is the free Lie algebra
    /// dimension given by the necklace count.
    #[test]
    fn labute_reduces_to_necklaces_below_level() {
        for n in 1..=8u32 {
            let necklace: i64 = divisors(n as u64)
                .into_iter()
                .map(|j| moebius(n as u64 / j) * 2i64.pow(j as u32))
                .sum::<i64>()
                / n as i64;
            assert_eq!(labute_g(n, 2, n + 1).unwrap(), BigInt::from(necklace));
        }
    }

    #[test]
    fn caps_for_p11() {
        assert_eq!(upper_caps(11, 9, false).unwrap().as_vec(), vec![2, 1, 1, 1, 2, 2, 4, 5, 8]);
        let refined = upper_caps(11, 9, true).unwrap();
        assert_eq!(refined.as_vec(), vec![2, 1, 1, 1, 2, 2, 3, 5, 8]);
        assert!(refined.ztype_refined);
        assert_eq!(refined.validity_limit, 9);
    }

    #[test]
    fn caps_respect_lemma_range() {
        assert_eq!(upper_caps(5, 3, false).unwrap().as_vec(), vec![2, 1, 1]);
        assert_eq!(upper_caps(5, 4, false), Err(Error::RangeExceeded { n_max: 4, limit: 4 }));
        assert_eq!(upper_caps(7, 5, true).unwrap().as_vec(), vec![2, 1, 1, 1, 2]);
        assert!(upper_caps(9, 3, false).is_err());
    }

    #[test]
    fn abelianization_bounds() {
        assert_eq!(lower_bounds(11, 1, 1).unwrap().to_vec(), vec![2]);
        let lb = lower_bounds(11, 1, 2).unwrap();
        assert_eq!(lb.iter().collect::<Vec<_>>(), vec![(1, 2), (11, 1)]);
        let lb = lower_bounds(3, 2, 2).unwrap();
        assert_eq!(lb.iter().collect::<Vec<_>>(), vec![(1, 2), (3, 2)]);
        assert!(lower_bounds(3, 2, 1).is_err());
    }

    #[test]
    fn lower_bounds_supported_on_prime_powers() {
        let caps = upper_caps(13, 11, true).unwrap();
        for a in 1..=3 {
            for b in a..=4 {
                let lb = lower_bounds(13, a, b).unwrap();
                assert!(lb.get(1) <= caps.get(1).unwrap());
                for (n, _) in lb.iter() {
                    assert!(crate::primes::log_exact(n as u64, 13).is_some());
                }
                assert_eq!(lb.order_exponent(), (a + b) as u64);
            }
        }
    }
}
