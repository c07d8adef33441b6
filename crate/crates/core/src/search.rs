//! Minimal-order search for groups with relations in levels 3 and 7.
//!
//! Starting from `a_1 = 2`, the lowest index whose dimension factor is
//! still below its cap is incremented until the relaxed inequality
//! `t^7 + t^3 - 2t + 1 > prod (1 - t^n)^{a_n}` holds on `(0, 1)`. Filling
//! low indices first yields the pointwise smallest product for a given
//! total, so the first feasible total is the minimum.

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{interesting_cap, upper_caps, CapProfile};
use crate::error::{Error, Result};
use crate::gs_check::{check_inequality, CheckMode, RelationProfile};
use crate::jennings::DimensionSequence;
use crate::primes::check_prime;
use crate::series::{PositivityReport, Witness};

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub prefix: Vec<u32>,
    pub witness: Witness,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub prime: u32,
    pub abelianization: (u32, u32),
    /// Total of the greedy segment.
    pub min_sum: u64,
    #[serde(serialize_with = "ser_dense")]
    pub sequence: DimensionSequence,
    pub violation_trace: Vec<TraceStep>,
    /// `min_sum + 2(a-1) + (b-a)`.
    pub order_exponent_bound: u64,
    pub final_report: PositivityReport,
}

fn ser_dense<S: serde::Serializer>(
    a: &DimensionSequence,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&a.to_vec(), s)
}

impl SearchResult {
    /// The greedy segment merged with the abelianization lower bounds at
    /// indices `p^c`, `c >= 1`.
    pub fn full_sequence(&self) -> Result<DimensionSequence> {
        let (a, b) = self.abelianization;
        let lb = crate::bounds::lower_bounds(self.prime, a, b)?;
        let mut out = self.sequence.clone();
        for (n, v) in lb.iter() {
            if out.get(n) < v {
                out = out.with(n, v);
            }
        }
        Ok(out)
    }
}

pub fn min_order_search(p: u32, a: u32, b: u32) -> Result<SearchResult> {
    check_prime(p)?;
    if p <= 7 {
        return Err(Error::InvalidArgument(format!("the order bound needs p > 7 (got {p})")));
    }
    if a < 1 || b < a {
        return Err(Error::InvalidArgument(format!(
            "abelianization type needs 1 <= a <= b (got a={a}, b={b})"
        )));
    }
    let profile = RelationProfile::zt37();
    let mut seq = vec![2u32];
    let mut trace = Vec::new();
    loop {
        let a_seq = DimensionSequence::from_slice(p, &seq)?;
        let report = check_inequality(&profile, &a_seq, CheckMode::Relaxed)?;
        if report.holds() {
            let min_sum = a_seq.order_exponent();
            return Ok(SearchResult {
                prime: p,
                abelianization: (a, b),
                min_sum,
                sequence: a_seq,
                violation_trace: trace,
                order_exponent_bound: min_sum + 2 * (a as u64 - 1) + (b - a) as u64,
                final_report: report,
            });
        }
        let witness = report.witness().cloned().expect("violated report has a witness");
        trace.push(TraceStep { prefix: seq.clone(), witness });
        increment_lowest(&mut seq, p)?;
    }
}

/// Raises the lowest factor that is below its cap, computing caps on demand.
fn increment_lowest(seq: &mut Vec<u32>, p: u32) -> Result<()> {
    let mut n = 1u32;
    loop {
        let cap = match interesting_cap(n, p, true) {
            Ok(c) => c,
            Err(Error::RangeExceeded { .. }) => return Err(Error::CapExhausted(p - 2)),
            Err(e) => return Err(e),
        };
        let i = n as usize - 1;
        if i == seq.len() {
            seq.push(0);
        }
        if seq[i] < cap {
            seq[i] += 1;
            return Ok(());
        }
        n += 1;
    }
}

/// The greedy sequence with total `sum`: indices filled to their caps from
/// the bottom up. `None` when the caps cannot absorb `sum`.
pub fn greedy_fill(caps: &[u32], sum: u32) -> Option<Vec<u32>> {
    let mut left = sum;
    let mut out = Vec::with_capacity(caps.len());
    for &c in caps {
        let take = c.min(left);
        out.push(take);
        left -= take;
    }
    (left == 0).then_some(out)
}

/// Every vector `0 <= a_n <= cap_n` on `n = 1..=caps.len()` with total at most `sum_limit`.
pub fn enumerate_capped(caps: &[u32], sum_limit: u32) -> Vec<Vec<u32>> {
    fn rec(caps: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == caps.len() {
            out.push(cur.clone());
            return;
        }
        let cap = caps[cur.len()].min(left);
        for v in 0..=cap {
            cur.push(v);
            rec(caps, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, sum_limit, &mut Vec::with_capacity(caps.len()), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteForceVerdict {
    pub prime: u32,
    pub sum_limit: u32,
    pub caps: CapProfile,
    pub examined: usize,
    /// Sequences for which the relaxed inequality holds.
    pub feasible: Vec<Vec<u32>>,
}

impl BruteForceVerdict {
    pub fn all_violated(&self) -> bool {
        self.feasible.is_empty()
    }
}

/// Grid points tried before falling back to the full positivity test, most
/// frequent witnesses first.
const QUICK_GRID: [u64; 7] = [11, 12, 10, 13, 9, 14, 8];
const QUICK_DEN: u64 = 20;

/// Whether `t^7 + t^3 - 2t + 1 <= prod (1 - t^n)^{a_n}` at `t = k/den`,
/// decided exactly on the factored product without expanding it.
pub fn relaxed_fails_at(seq: &[u32], k: u64, den: u64) -> bool {
    let weight: u32 = seq.iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum();
    let deg = weight.max(7);
    let (k, den) = (BigInt::from(k), BigInt::from(den));
    let dp = |e: u32| Pow::pow(&den, e);
    let kp = |e: u32| Pow::pow(&k, e);
    let lhs = kp(7) * dp(deg - 7) + kp(3) * dp(deg - 3) - BigInt::from(2) * &k * dp(deg - 1) + dp(deg);
    let mut rhs = dp(deg - weight);
    for (i, &a) in seq.iter().enumerate() {
        let n = i as u32 + 1;
        if a > 0 {
            rhs *= Pow::pow(dp(n) - kp(n), a);
        }
    }
    lhs <= rhs
}

/// Checks every cap-respecting sequence on indices `1..=n_max` with total
/// at most `sum_limit` against the relaxed (3,7) inequality.
///
/// A sequence refuted at one of a few grid points is counted as violated
/// right away; the rest go through the full positivity test.
pub fn brute_force_infeasibility(p: u32, sum_limit: u32, n_max: u32) -> Result<BruteForceVerdict> {
    let caps = upper_caps(p, n_max, true)?;
    let candidates = enumerate_capped(&caps.as_vec(), sum_limit);
    let profile = RelationProfile::zt37();
    let outcomes = candidates
        .par_iter()
        .map(|seq| {
            if QUICK_GRID.iter().any(|&k| relaxed_fails_at(seq, k, QUICK_DEN)) {
                return Ok(None);
            }
            let a = DimensionSequence::from_slice(p, seq)?;
            let holds = check_inequality(&profile, &a, CheckMode::Relaxed)?.holds();
            Ok(holds.then(|| seq.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BruteForceVerdict {
        prime: p,
        sum_limit,
        caps,
        examined: candidates.len(),
        feasible: outcomes.into_iter().flatten().collect(),
    })
}
