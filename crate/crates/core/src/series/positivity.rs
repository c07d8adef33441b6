//! Exact decision of `f(t) > 0` for all `t` in the open interval `(0, 1)`.
//!
//! The test first scans the grid `t = k/20`. If no grid point is
//! non-positive, the polynomial is stripped of its roots at `0` and `1`
//! (the factors `t` and `1 - t` are positive on the open interval) and a
//! Sturm sequence counts its distinct roots in `(0, 1)`. Zero roots means
//! constant sign, decided by the value at `1/2`. Otherwise the roots are
//! isolated by bisection until a point with `f <= 0` turns up.
//!
//! All Sturm arithmetic runs on primitive integer polynomials. Every
//! rescaling uses a positive factor, so signs are never disturbed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ExactPoly;
use crate::error::{Error, Result};

const GRID_DENOMINATOR: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds(SturmCertificate),
    Violated(Witness),
}

/// Evidence that a polynomial fails to be positive somewhere in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A rational point with non-positive value.
    Point {
        #[serde(serialize_with = "ser_rational")]
        t: BigRational,
        #[serde(serialize_with = "ser_rational")]
        value: BigRational,
    },
    /// A root of even multiplicity that is not rational. The polynomial is
    /// non-negative around it, so no rational point has a value `<= 0`;
    /// the interval `(lo, hi)` is certified by Sturm counts to contain it.
    IrrationalDoubleRoot {
        #[serde(serialize_with = "ser_rational")]
        lo: BigRational,
        #[serde(serialize_with = "ser_rational")]
        hi: BigRational,
    },
}

impl Witness {
    pub fn point(&self) -> Option<&BigRational> {
        match self {
            Witness::Point { t, .. } => Some(t),
            Witness::IrrationalDoubleRoot { .. } => None,
        }
    }

    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Witness::Point { value, .. } => Some(value),
            Witness::IrrationalDoubleRoot { .. } => None,
        }
    }
}

/// Sturm root count summary backing a positive verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmCertificate {
    /// Multiplicity of `t` removed before building the sequence.
    pub stripped_at_zero: usize,
    /// Multiplicity of `1 - t` removed before building the sequence.
    pub stripped_at_one: usize,
    pub sequence_length: usize,
    pub variations_at_zero: usize,
    pub variations_at_one: usize,
    pub roots_in_interval: usize,
    #[serde(serialize_with = "ser_rational")]
    pub sample_t: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub sample_value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl PositivityReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Violated(w) => Some(w),
            Verdict::Holds(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&SturmCertificate> {
        match &self.verdict {
            Verdict::Holds(c) => Some(c),
            Verdict::Violated(_) => None,
        }
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(
    q: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Decides whether `f(t) > 0` for every `t` in `(0, 1)`.
pub fn positive_on_open_unit_interval(f: &ExactPoly) -> Result<PositivityReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ints = f.primitive_integer();
    let violated = |t: BigRational| PositivityReport {
        verdict: Verdict::Violated(Witness::Point {
            value: f.eval(&t),
            t,
        }),
    };

    if let Some(k) = grid_minimum(&ints) {
        return Ok(violated(BigRational::new(k.into(), GRID_DENOMINATOR.into())));
    }

    let (core, at_zero, at_one) = strip_endpoint_roots(ints);
    let sturm = sturm_sequence(&core);
    let v0 = variations(sturm.iter().map(|p| p[0].clone()));
    let v1 = variations(sturm.iter().map(|p| p.iter().sum::<BigInt>()));
    let roots = v0 - v1;

    if roots == 0 {
        let half = BigRational::new(1.into(), 2.into());
        let sample_value = f.eval(&half);
        if !sample_value.is_positive() {
            return Ok(violated(half));
        }
        return Ok(PositivityReport {
            verdict: Verdict::Holds(SturmCertificate {
                stripped_at_zero: at_zero,
                stripped_at_one: at_one,
                sequence_length: sturm.len(),
                variations_at_zero: v0,
                variations_at_one: v1,
                roots_in_interval: 0,
                sample_t: half,
                sample_value,
            }),
        });
    }

    let witness = isolate_witness(&core, &sturm, roots);
    Ok(PositivityReport {
        verdict: Verdict::Violated(match witness {
            Found::Point(t) => Witness::Point { value: f.eval(&t), t },
            Found::Irrational(lo, hi) => Witness::IrrationalDoubleRoot { lo, hi },
        }),
    })
}

/// Grid index `k` of the most negative value among `f(k/20) <= 0`, if any.
fn grid_minimum(ints: &[BigInt]) -> Option<i64> {
    let den = BigInt::from(GRID_DENOMINATOR);
    // Every scaled value shares the positive factor 20^deg, so they compare directly.
    (1..GRID_DENOMINATOR)
        .map(|k| (k, scaled_value(ints, &BigInt::from(k), &den)))
        .filter(|(_, v)| !v.is_positive())
        .min_by(|a, b| a.1.cmp(&b.1))
        .map(|(k, _)| k)
}

/// `den^deg * f(num/den)` for `den > 0`.
fn scaled_value(f: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let Some((lead, rest)) = f.split_last() else {
        return BigInt::zero();
    };
    let mut acc = lead.clone();
    let mut dpow = BigInt::one();
    for c in rest.iter().rev() {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    acc
}

fn sign_at(f: &[BigInt], t: &BigRational) -> i8 {
    let v = scaled_value(f, t.numer(), t.denom());
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn primitive(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    let content = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in &mut f {
            *c /= &content;
        }
    }
    f
}

/// Removes the factors `t` and `1 - t`, returning their multiplicities.
fn strip_endpoint_roots(mut f: Vec<BigInt>) -> (Vec<BigInt>, usize, usize) {
    let at_zero = f.iter().take_while(|c| c.is_zero()).count();
    f.drain(..at_zero);
    let mut at_one = 0;
    while f.len() > 1 && f.iter().sum::<BigInt>().is_zero() {
        // Synthetic division by (t - 1); the sign flip is absorbed by `1 - t > 0`.
        let n = f.len() - 1;
        let mut q = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            carry += &f[k + 1];
            q[k] = carry.clone();
        }
        f = q.into_iter().map(|c| -c).collect();
        at_one += 1;
    }
    (primitive(f), at_zero, at_one)
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Remainder of `a` by `b` up to a positive constant factor.
fn positive_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let lead_abs = lead.abs();
    let lead_sign = BigInt::from(if lead.is_negative() { -1 } else { 1 });
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let top = r.last().unwrap().clone() * &lead_sign;
        for c in r.iter_mut() {
            *c *= &lead_abs;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &top * bc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        r = primitive(r);
    }
    r
}

fn sturm_sequence(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut seq = vec![f.to_vec()];
    let d = primitive(derivative(f));
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = positive_pseudo_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn variations(values: impl Iterator<Item = BigInt>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(sturm: &[Vec<BigInt>], t: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in sturm {
        let s = sign_at(p, t);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

enum Found {
    Point(BigRational),
    Irrational(BigRational, BigRational),
}

struct Interval {
    lo: BigRational,
    hi: BigRational,
    v_lo: usize,
    v_hi: usize,
}

/// Bisects `(0, 1)` until a point with `f <= 0` appears. `f` has no roots
/// at the endpoints and `roots > 0` distinct roots inside.
fn isolate_witness(f: &[BigInt], sturm: &[Vec<BigInt>], roots: usize) -> Found {
    let two = BigRational::from_integer(2.into());
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut stack = vec![Interval {
        v_lo: variations_at(sturm, &zero),
        v_hi: variations_at(sturm, &one),
        lo: zero,
        hi: one,
    }];
    debug_assert_eq!(stack[0].v_lo - stack[0].v_hi, roots);
    let mut touching = Vec::new();

    while let Some(iv) = stack.pop() {
        let count = iv.v_lo - iv.v_hi;
        if count == 0 {
            continue;
        }
        if count == 1 && sign_at(f, &iv.lo) > 0 && sign_at(f, &iv.hi) > 0 {
            touching.push(iv);
            continue;
        }
        let mid = (&iv.lo + &iv.hi) / &two;
        if sign_at(f, &mid) <= 0 {
            return Found::Point(mid);
        }
        let v_mid = variations_at(sturm, &mid);
        stack.push(Interval { lo: mid.clone(), hi: iv.hi, v_lo: v_mid, v_hi: iv.v_hi });
        stack.push(Interval { lo: iv.lo, hi: mid, v_lo: iv.v_lo, v_hi: v_mid });
    }

    // Only roots of even multiplicity remain; f >= 0 on (0, 1) and the
    // witness is the root itself when it is rational.
    let iv = touching.pop().expect("a root was counted but never isolated");
    refine_double_root(f, sturm, iv)
}

/// Shrinks an isolating interval below `1/L^2`, where `L` is the leading
/// coefficient. Any rational root `u/v` has `v | L`, so at that width the
/// simplest rational in the interval is the root if the root is rational.
fn refine_double_root(f: &[BigInt], sturm: &[Vec<BigInt>], mut iv: Interval) -> Found {
    let two = BigRational::from_integer(2.into());
    let lead = f.last().unwrap().abs();
    let width = BigRational::new(BigInt::one(), &lead * &lead);
    while &iv.hi - &iv.lo >= width {
        let mid = (&iv.lo + &iv.hi) / &two;
        if sign_at(f, &mid) == 0 {
            return Found::Point(mid);
        }
        let v_mid = variations_at(sturm, &mid);
        if iv.v_lo - v_mid == 1 {
            iv.hi = mid;
            iv.v_hi = v_mid;
        } else {
            iv.lo = mid;
            iv.v_lo = v_mid;
        }
    }
    let candidate = simplest_between(&iv.lo, &iv.hi);
    if sign_at(f, &candidate) == 0 {
        Found::Point(candidate)
    } else {
        Found::Irrational(iv.lo, iv.hi)
    }
}

/// Rational with the smallest denominator in `[lo, hi]`, for `0 <= lo <= hi`.
pub(crate) fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
