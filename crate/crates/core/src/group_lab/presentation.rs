//! Presentations of finite p-groups and the exact sequence they induce on
//! augmentation-ideal quotients.
//!
//! For a presentation with relators `f_1, ..., f_r` in levels `v_i`, the
//! Fox Jacobian gives maps
//! `⊕_i F_p[G]/I^{n-v_i} -> ⊕_j F_p[G]/I^{n-1} -> F_p[G]/I^n -> F_p -> 0`,
//! and `e_n` is the dimension of the kernel of the first map. Counting
//! dimensions gives `sum_i r_i c_{n-i} - d c_{n-1} = 1 + e_n`.

use num_bigint::BigInt;
use serde::Serialize;

use super::filtration::{augmentation_powers, dimension_subgroups, AugmentationFiltration};
use super::fp::{algebra_add, algebra_mul, algebra_neg, left_mul_elem, right_mul_aug, unit, Echelon};
use super::magnus::{fox_derivative, magnus_relator, NcTruncPoly, Word};
use super::table::{build_group, standard_generators, FiniteGroupTable, GroupKind};
use crate::error::{Error, Result};
use crate::gs_check::RelationProfile;
use crate::jennings::DimensionSequence;

/// Generators and relator words; generators are `x1..xd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// Built-in presentations: `<x | x^{p^k}>`, `<x_1..x_d | x_i^p, [x_i, x_j]>`
/// and `<x, y | x^p, y^p, [[x,y],x], [[x,y],y]>`. The last one presents
/// the Heisenberg group for odd `p` but its minimality is not asserted.
pub fn builtin_presentation(kind: GroupKind, p: u32) -> Presentation {
    let x = Word::letter;
    match kind {
        GroupKind::Cyclic(k) => Presentation { generators: 1, relators: vec![x(0).pow(p.pow(k))] },
        GroupKind::ElemAbelian(d) => {
            let d = d as usize;
            let mut relators: Vec<Word> = (0..d).map(|i| x(i).pow(p)).collect();
            for i in 0..d {
                for j in i + 1..d {
                    relators.push(Word::commutator(&x(i), &x(j)));
                }
            }
            Presentation { generators: d, relators }
        }
        GroupKind::Heisenberg => {
            let c = Word::commutator(&x(0), &x(1));
            Presentation {
                generators: 2,
                relators: vec![
                    x(0).pow(p),
                    x(1).pow(p),
                    Word::commutator(&c, &x(0)),
                    Word::commutator(&c, &x(1)),
                ],
            }
        }
    }
}

/// A group together with generator images and relators that hold in it,
/// plus everything needed to evaluate the Jacobian sequence.
#[derive(Clone, Debug)]
pub struct PresentationData {
    group: FiniteGroupTable,
    generator_images: Vec<u32>,
    relators: Vec<Word>,
    levels: Vec<usize>,
    filtration: AugmentationFiltration,
    /// `fox[i][j]`: image of `D_j f_i` in `F_p[G]`.
    fox: Vec<Vec<Vec<u32>>>,
}

impl PresentationData {
    pub fn builtin(kind: GroupKind, p: u32) -> Result<Self> {
        let group = build_group(kind, p)?;
        let pres = builtin_presentation(kind, p);
        Self::new(group, standard_generators(kind, p), pres.relators)
    }

    pub fn new(group: FiniteGroupTable, generator_images: Vec<u32>, relators: Vec<Word>) -> Result<Self> {
        let d = generator_images.len();
        if d == 0 {
            return Err(Error::InvalidPresentation("no generators".into()));
        }
        if let Some(&g) = generator_images.iter().find(|&&g| g as usize >= group.order()) {
            return Err(Error::InvalidPresentation(format!("generator image {g} is not an element")));
        }
        if group.generate(generator_images.iter().copied()).len() != group.order() {
            return Err(Error::InvalidPresentation("generator images do not generate the group".into()));
        }
        let p = group.prime();
        let filtration = augmentation_powers(&group);
        let mut levels = Vec::with_capacity(relators.len());
        let mut fox = Vec::with_capacity(relators.len());
        for w in &relators {
            if w.rank_needed() > d {
                return Err(Error::InvalidPresentation(format!("relator {w} uses more than {d} generators")));
            }
            if evaluate(&group, &generator_images, w) != 0 {
                return Err(Error::InvalidPresentation(format!("relator {w} does not hold in the group")));
            }
            let reduced = w.free_reduce();
            if reduced.letters().is_empty() {
                return Err(Error::InvalidPresentation(format!("relator {w} is trivial in the free group")));
            }
            let level = relator_level(&reduced, p, d)?;
            if level < 2 {
                return Err(Error::InvalidPresentation(format!(
                    "relator {w} lies in level 1, so the generators are not minimal"
                )));
            }
            levels.push(level);
            fox.push((0..d).map(|j| fox_in_group_ring(&group, &generator_images, w, j)).collect());
        }
        Ok(Self { group, generator_images, relators, levels, filtration, fox })
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn generator_images(&self) -> &[u32] {
        &self.generator_images
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Level of each relator, in input order.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn filtration(&self) -> &AugmentationFiltration {
        &self.filtration
    }

    pub fn profile(&self) -> Result<RelationProfile> {
        RelationProfile::new(self.generator_images.len() as u32, self.levels.iter().map(|&v| v as u32).collect())
    }

    /// Fails unless the relator levels equal `expected` as multisets.
    pub fn check_expected_levels(&self, expected: &[usize]) -> Result<()> {
        let mut have = self.levels.clone();
        let mut want = expected.to_vec();
        have.sort_unstable();
        want.sort_unstable();
        if have != want {
            return Err(Error::InvalidPresentation(format!("relator levels are {have:?}, expected {want:?}")));
        }
        Ok(())
    }

    /// `D_j f_i` mapped into `F_p[G]`, computed with the group-ring Fox calculus.
    pub fn fox_images(&self) -> &[Vec<Vec<u32>>] {
        &self.fox
    }

    /// The same images computed instead from truncated Magnus expansions.
    ///
    /// The expansion is taken through degree `L` (the nilpotency index of
    /// the augmentation ideal), so this is only practical for small groups.
    pub fn fox_images_via_magnus(&self) -> Result<Vec<Vec<Vec<u32>>>> {
        let d = self.generator_images.len();
        let cap = self.filtration.nilpotency_index();
        if (d as f64).powi(cap as i32) > 1e6 {
            return Err(Error::InvalidArgument(format!(
                "Magnus expansion through degree {cap} in {d} variables is too large"
            )));
        }
        let p = self.group.prime();
        self.relators
            .iter()
            .map(|w| {
                let f = magnus_relator(w, p, d, cap)?;
                (0..d)
                    .map(|j| Ok(self.to_group_algebra(&fox_derivative(&f, j)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }

    /// `X_j -> g_j - 1`; well defined on the truncation because `I^L = 0`.
    pub fn to_group_algebra(&self, f: &NcTruncPoly) -> Vec<u32> {
        let prefixes = f.prefixes();
        let g = &self.group;
        let p = g.prime();
        let mut out = vec![0u32; g.order()];
        let mut stack = vec![(Vec::<u8>::new(), unit(g, 0))];
        while let Some((word, value)) = stack.pop() {
            let c = f.coeff(&word);
            if c != 0 {
                super::fp::axpy(&mut out, c, &value, p);
            }
            for (j, &s) in self.generator_images.iter().enumerate() {
                let mut next = word.clone();
                next.push(j as u8);
                if prefixes.contains(&next) {
                    let v = right_mul_aug(g, &value, s);
                    if v.iter().any(|&x| x != 0) {
                        stack.push((next, v));
                    }
                }
            }
        }
        out
    }

    /// `e_n`: kernel dimension of `⊕_i F_p[G]/I^{n-v_i} -> ⊕_j F_p[G]/I^{n-1}`.
    pub fn e_direct(&self, n: i64) -> usize {
        let d = self.generator_images.len();
        let target = self.filtration.power(n - 1);
        let qdim = target.dim() - target.rank();
        let mut image = Echelon::new(self.group.prime(), d * qdim);
        let mut domain_dim = 0;
        for (i, &v) in self.levels.iter().enumerate() {
            let k = n - v as i64;
            if k <= 0 {
                continue;
            }
            let source = self.filtration.power(k);
            for x in source.free_columns() {
                domain_dim += 1;
                let mut row = Vec::with_capacity(d * qdim);
                for j in 0..d {
                    let moved = left_mul_elem(&self.group, x as u32, &self.fox[i][j]);
                    row.extend(target.quotient_coords(&moved));
                }
                image.insert(row);
            }
        }
        domain_dim - image.rank()
    }

    /// Dimension factors of the group, measured from the filtration.
    pub fn measured_factors(&self) -> Result<DimensionSequence> {
        Ok(dimension_subgroups(&self.group, &self.filtration)?.factors)
    }

    /// Checks `sum_i r_i c_{n-i} - d c_{n-1} = 1 + e_n` for `n = 1..=H` with
    /// `H = N + max level + 1`, and the terminal value
    /// `1 + e_H = (r + 1 - d)|G|`.
    pub fn verify_recursion(&self) -> Result<RecursionReport> {
        let profile = self.profile()?;
        let n_stab = self.filtration.nilpotency_index() - 1;
        let horizon = n_stab + profile.max_level().unwrap_or(0) as usize + 1;
        let d = profile.d as i64;
        let c = |n: i64| self.filtration.c(n) as i64;
        let mut rows = Vec::with_capacity(horizon);
        for n in 1..=horizon as i64 {
            let mut lhs = c(n) - d * c(n - 1);
            for &v in &self.levels {
                lhs += c(n - v as i64);
            }
            let e = self.e_direct(n);
            rows.push(RecursionRow { n: n as usize, c: c(n) as usize, e, lhs, holds: lhs == 1 + e as i64 });
        }
        let order = self.group.order() as i64;
        let r = self.levels.len() as i64;
        let terminal = 1 + rows.last().map_or(0, |row| row.e as i64);
        let terminal_ok = terminal == (r + 1 - d) * order;
        Ok(RecursionReport {
            horizon,
            all_hold: rows.iter().all(|row| row.holds),
            rows,
            terminal_ok,
        })
    }

    /// `e_0, ..., e_len` with `e_0 = 0`, indexed like [`crate::validity::e_sequence`].
    pub fn e_sequence(&self, len: usize) -> Vec<BigInt> {
        (0..=len as i64).map(|n| BigInt::from(if n == 0 { 0 } else { self.e_direct(n) })).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionRow {
    pub n: usize,
    pub c: usize,
    pub e: usize,
    /// `sum_i r_i c_{n-i} - d c_{n-1}`.
    pub lhs: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub horizon: usize,
    pub rows: Vec<RecursionRow>,
    pub all_hold: bool,
    pub terminal_ok: bool,
}

impl RecursionReport {
    pub fn ok(&self) -> bool {
        self.all_hold && self.terminal_ok
    }
}

/// Image of `w` in the group.
pub fn evaluate(g: &FiniteGroupTable, images: &[u32], w: &Word) -> u32 {
    w.letters().iter().fold(0, |acc, l| {
        let x = images[l.generator];
        g.mul(acc, if l.inverse { g.inv(x) } else { x })
    })
}

/// Least degree of `w - 1` under the Magnus map. A nontrivial reduced word
/// of length `l` has level at most `l`, so caps are doubled up to that.
fn relator_level(w: &Word, p: u32, vars: usize) -> Result<usize> {
    let len = w.letters().len();
    let mut cap = 2.min(len);
    loop {
        if let Some(level) = magnus_relator(w, p, vars, cap)?.level() {
            return Ok(level);
        }
        if cap >= len {
            return Err(Error::InvalidPresentation(format!("relator {w} has no level up to {len}")));
        }
        cap = (2 * cap).min(len);
    }
}

/// Fox derivative `D_j w` evaluated in `F_p[G]`, using
/// `D_j(uv) = D_j u + u D_j v`, `D_j x_j = 1`, `D_j x_j^-1 = -x_j^-1`.
pub fn fox_in_group_ring(g: &FiniteGroupTable, images: &[u32], w: &Word, j: usize) -> Vec<u32> {
    let p = g.prime();
    let mut out = vec![0u32; g.order()];
    let mut prefix = 0u32;
    for l in w.letters() {
        let x = images[l.generator];
        if l.generator == j {
            let term = if l.inverse {
                algebra_neg(&unit(g, g.mul(prefix, g.inv(x))), p)
            } else {
                unit(g, prefix)
            };
            out = algebra_add(&out, &term, p);
        }
        prefix = g.mul(prefix, if l.inverse { g.inv(x) } else { x });
    }
    out
}

/// `w - 1 = sum_j (D_j w)(x_j - 1)` in `F_p[G]`; used as a consistency check.
pub fn fox_identity_holds(g: &FiniteGroupTable, images: &[u32], w: &Word) -> bool {
    let p = g.prime();
    let mut lhs = unit(g, evaluate(g, images, w));
    lhs[0] = (lhs[0] + p - 1) % p;
    let mut rhs = vec![0u32; g.order()];
    for (j, &s) in images.iter().enumerate() {
        let mut sm1 = unit(g, s);
        sm1[0] = (sm1[0] + p - 1) % p;
        rhs = algebra_add(&rhs, &algebra_mul(g, &fox_in_group_ring(g, images, w, j), &sm1), p);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validity::e_sequence;

    #[test]
    fn builtin_levels() {
        let c = PresentationData::builtin(GroupKind::Cyclic(2), 3).unwrap();
        assert_eq!(c.levels(), &[9]);
        let e = PresentationData::builtin(GroupKind::ElemAbelian(2), 3).unwrap();
        assert_eq!(e.levels(), &[3, 3, 2]);
        e.check_expected_levels(&[2, 3, 3]).unwrap();
        assert!(e.check_expected_levels(&[2, 2, 3]).is_err());
        let h = PresentationData::builtin(GroupKind::Heisenberg, 3).unwrap();
        assert_eq!(h.levels(), &[3, 3, 3, 3]);
    }

    #[test]
    fn recursion_for_cyclic_and_elementary() {
        for (kind, p) in [
            (GroupKind::Cyclic(1), 3),
            (GroupKind::Cyclic(2), 3),
            (GroupKind::Cyclic(1), 5),
            (GroupKind::ElemAbelian(2), 3),
            (GroupKind::ElemAbelian(2), 2),
        ] {
            let pd = PresentationData::builtin(kind, p).unwrap();
            let rep = pd.verify_recursion().unwrap();
            assert!(rep.ok(), "{kind} p={p}: {:?}", rep.rows);
        }
    }

    #[test]
    fn direct_e_matches_jennings_prediction() {
        let pd = PresentationData::builtin(GroupKind::ElemAbelian(2), 3).unwrap();
        let a = pd.measured_factors().unwrap();
        let profile = pd.profile().unwrap();
        let predicted = e_sequence(&a, &profile, 12);
        assert_eq!(pd.e_sequence(12), predicted);
    }

    #[test]
    fn fox_routes_agree() {
        for (kind, p) in [(GroupKind::Cyclic(1), 3), (GroupKind::ElemAbelian(2), 3), (GroupKind::Heisenberg, 3)] {
            let pd = PresentationData::builtin(kind, p).unwrap();
            assert_eq!(pd.fox_images_via_magnus().unwrap(), pd.fox_images());
            for w in pd.relators() {
                assert!(fox_identity_holds(pd.group(), pd.generator_images(), w));
            }
        }
    }

    #[test]
    fn rejects_bad_presentations() {
        let g = build_group(GroupKind::Cyclic(1), 3).unwrap();
        let x: Word = "x1^2".parse().unwrap();
        assert!(PresentationData::new(g.clone(), vec![1], vec![x]).is_err());
        let trivial: Word = "x1X1".parse().unwrap();
        assert!(PresentationData::new(g.clone(), vec![1], vec![trivial]).is_err());
        assert!(PresentationData::new(g.clone(), vec![0], vec![]).is_err());
        // x^3 with image 1 holds; as a relator it is fine, but x1 alone is level 1.
        let g9 = build_group(GroupKind::Cyclic(2), 3).unwrap();
        let level_one: Word = "x1x2".parse().unwrap();
        let err = PresentationData::new(g9, vec![1, 8], vec![level_one]);
        assert!(err.is_err());
    }
}
