use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactPoly;
use crate::error::{Error, Result};

/// Power series known through degree `trunc_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
    trunc_degree: usize,
}

impl TruncSeries {
    /// Pads with zeros or drops terms so that exactly degrees `0..=trunc_degree` are kept.
    pub fn new(mut coeffs: Vec<BigRational>, trunc_degree: usize) -> Self {
        coeffs.resize(trunc_degree + 1, BigRational::zero());
        Self { coeffs, trunc_degree }
    }

    pub fn from_poly(f: &ExactPoly, trunc_degree: usize) -> Self {
        Self::new(f.coeffs().to_vec(), trunc_degree)
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc_degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> ExactPoly {
        ExactPoly::new(self.coeffs.clone())
    }

    /// Product truncated at the smaller of the two truncation degrees.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let d = self.trunc_degree.min(other.trunc_degree);
        let mut out = vec![BigRational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().take(d + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(d + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncSeries::new(out, d)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

/// Multiplicative inverse modulo `t^(D+1)`.
pub fn series_inverse(f: &TruncSeries) -> Result<TruncSeries> {
    let f0 = &f.coeffs[0];
    if f0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let inv0 = f0.recip();
    let mut g: Vec<BigRational> = Vec::with_capacity(f.trunc_degree + 1);
    g.push(inv0.clone());
    for k in 1..=f.trunc_degree {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let fi = &f.coeffs[i];
            if !fi.is_zero() {
                acc += fi * &g[k - i];
            }
        }
        g.push(-acc * &inv0);
    }
    Ok(TruncSeries::new(g, f.trunc_degree))
}
