//! Powers of the augmentation ideal, the dimension subgroups they cut out,
//! and Lazard's description of those subgroups through the lower central
//! series.

use serde::Serialize;

use super::fp::{right_mul_aug, unit, Echelon};
use super::table::{lower_central_series, FiniteGroupTable};
use crate::error::Result;
use crate::jennings::DimensionSequence;

/// `I^0 = F_p[G] ⊋ I ⊋ I^2 ⊋ ... ⊋ I^L = 0`.
#[derive(Clone, Debug)]
pub struct AugmentationFiltration {
    /// `powers[n] = I^n` for `n = 0..=L`.
    powers: Vec<Echelon>,
    order: usize,
    prime: u32,
}

impl AugmentationFiltration {
    /// Nilpotency index `L`: the least `n` with `I^n = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len() - 1
    }

    /// `I^n` for any integer `n`, taking `I^n = F_p[G]` for `n <= 0`.
    pub fn power(&self, n: i64) -> Echelon {
        match usize::try_from(n) {
            Err(_) => Echelon::full(self.prime, self.order),
            Ok(i) if i < self.powers.len() => self.powers[i].clone(),
            Ok(_) => Echelon::new(self.prime, self.order),
        }
    }

    /// `c_n = dim F_p[G] / I^n`.
    pub fn c(&self, n: i64) -> usize {
        if n <= 0 {
            return 0;
        }
        self.order - self.powers.get(n as usize).map_or(0, Echelon::rank)
    }

    /// `c_0, ..., c_L`.
    pub fn c_sequence(&self) -> Vec<usize> {
        (0..=self.nilpotency_index() as i64).map(|n| self.c(n)).collect()
    }

    /// `b_n = dim I^n / I^{n+1}` for `n = 0..L`.
    pub fn b_sequence(&self) -> Vec<usize> {
        self.powers.windows(2).map(|w| w[0].rank() - w[1].rank()).collect()
    }

    /// Whether `g - 1` lies in `I^n`.
    pub fn contains_shifted(&self, g: u32, n: usize) -> bool {
        if n >= self.powers.len() {
            return g == 0;
        }
        let mut v = vec![0u32; self.order];
        v[g as usize] = 1;
        v[0] = (v[0] + self.prime - 1) % self.prime;
        self.powers[n].contains(&v)
    }
}

/// Builds every power of the augmentation ideal using
/// `I^{n+1} = sum_s I^n (s - 1)` over a generating set `s`.
pub fn augmentation_powers(g: &FiniteGroupTable) -> AugmentationFiltration {
    let p = g.prime();
    let n = g.order();
    let gens = g.generating_set();
    let full = Echelon::full(p, n);
    let aug = Echelon::from_vectors(
        p,
        n,
        (1..n as u32).map(|x| right_mul_aug(g, &unit(g, 0), x)),
    );
    let mut powers = vec![full, aug];
    while powers.last().unwrap().rank() > 0 {
        let prev = powers.last().unwrap();
        let mut next = Echelon::new(p, n);
        for v in prev.basis() {
            for &s in &gens {
                next.insert(right_mul_aug(g, v, s));
            }
        }
        powers.push(next);
    }
    AugmentationFiltration { powers, order: n, prime: p }
}

/// The dimension subgroups `G_n = {g : g - 1 in I^n}` and the resulting
/// factors `a_n = log_p [G_n : G_{n+1}]`.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionSubgroups {
    /// `chain[n - 1] = G_n` for `n = 1..=L`; the last entry is trivial.
    pub chain: Vec<Vec<u32>>,
    pub factors: DimensionSequence,
}

impl DimensionSubgroups {
    /// `G_n` for `n >= 1`, trivial past the end of the chain.
    pub fn get(&self, n: usize) -> &[u32] {
        let i = (n.max(1) - 1).min(self.chain.len() - 1);
        &self.chain[i]
    }
}

pub fn dimension_subgroups(g: &FiniteGroupTable, filt: &AugmentationFiltration) -> Result<DimensionSubgroups> {
    let l = filt.nilpotency_index().max(1);
    let chain: Vec<Vec<u32>> = (1..=l)
        .map(|n| (0..g.order() as u32).filter(|&x| filt.contains_shifted(x, n)).collect())
        .collect();
    let p = g.prime() as usize;
    let mut entries = Vec::new();
    for (i, w) in chain.windows(2).enumerate() {
        let mut ratio = w[0].len() / w[1].len();
        let mut k = 0;
        while ratio > 1 {
            ratio /= p;
            k += 1;
        }
        entries.push((i as u32 + 1, k));
    }
    Ok(DimensionSubgroups { chain, factors: DimensionSequence::new(g.prime(), entries)? })
}

/// `prod_{i p^j >= n} gamma_i^{p^j}` for `n = 1..=count`.
pub fn lazard_subgroups(g: &FiniteGroupTable, count: usize) -> Vec<Vec<u32>> {
    let lcs = lower_central_series(g);
    let p = g.prime() as u64;
    let exp = g.exponent() as u64;
    (1..=count as u64)
        .map(|n| {
            let mut gens = Vec::new();
            for (i, gamma) in lcs.iter().enumerate() {
                let i = i as u64 + 1;
                let mut q = 1u64;
                loop {
                    if i * q >= n {
                        gens.extend(gamma.iter().map(|&x| g.pow(x, q)));
                        // Larger powers of gamma_i lie in this one.
                        break;
                    }
                    if q >= exp {
                        break;
                    }
                    q *= p;
                }
            }
            g.generate(gens)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LazardReport {
    /// `(n, |G_n|, |Lazard_n|, equal)`.
    pub rows: Vec<(usize, usize, usize, bool)>,
    pub all_equal: bool,
}

pub fn lazard_check(g: &FiniteGroupTable, dims: &DimensionSubgroups) -> LazardReport {
    let laz = lazard_subgroups(g, dims.chain.len());
    let rows: Vec<_> = dims
        .chain
        .iter()
        .zip(&laz)
        .enumerate()
        .map(|(i, (a, b))| (i + 1, a.len(), b.len(), a == b))
        .collect();
    let all_equal = rows.iter().all(|r| r.3);
    LazardReport { rows, all_equal }
}

/// For abelian groups the dimension subgroups are `G^{p^e}` with `e`
/// either `ceil(log_p n)` or `floor(log_p n)`; this reports which one
/// matches on `n = 1..=L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerConvention {
    pub ceiling_matches: bool,
    pub floor_matches: bool,
}

pub fn abelian_power_convention(g: &FiniteGroupTable, dims: &DimensionSubgroups) -> PowerConvention {
    let all: Vec<u32> = (0..g.order() as u32).collect();
    let p = g.prime() as u64;
    let (mut ceil_ok, mut floor_ok) = (true, true);
    for (i, gn) in dims.chain.iter().enumerate() {
        let n = i as u64 + 1;
        let mut floor_pow = 1u64;
        while floor_pow * p <= n {
            floor_pow *= p;
        }
        let ceil_pow = if floor_pow == n { n } else { floor_pow * p };
        ceil_ok &= g.power_subgroup(&all, ceil_pow) == *gn;
        floor_ok &= g.power_subgroup(&all, floor_pow) == *gn;
    }
    PowerConvention { ceiling_matches: ceil_ok, floor_matches: floor_ok }
}

/// Checks `[G_m, G_n] <= G_{m+n}` and `G_n^p <= G_{np}` on the computed chain.
pub fn satisfies_filtration_axioms(g: &FiniteGroupTable, dims: &DimensionSubgroups) -> bool {
    let len = dims.chain.len();
    let member = |n: usize, x: u32| dims.get(n).binary_search(&x).is_ok() || (n > len && x == 0);
    let p = g.prime() as u64;
    for m in 1..=len {
        for n in m..=len {
            for &x in dims.get(m) {
                for &y in dims.get(n) {
                    if !member(m + n, g.commutator(x, y)) {
                        return false;
                    }
                }
            }
        }
        for &x in dims.get(m) {
            if !member(m * p as usize, g.pow(x, p)) {
                return false;
            }
        }
    }
    true
}
