//! Dense linear algebra over `F_p` and arithmetic in the group algebra `F_p[G]`.
//!
//! Group algebra elements are coefficient vectors indexed by group element.

use super::table::FiniteGroupTable;

#[inline]
fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    // Fermat: a^(p-2).
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// `v += c * w` in place.
pub fn axpy(v: &mut [u32], c: u32, w: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (x, &y) in v.iter_mut().zip(w) {
        if y != 0 {
            *x = ((*x as u64 + c as u64 * y as u64) % p as u64) as u32;
        }
    }
}

/// A subspace of `F_p^dim` kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, dim: usize) -> Self {
        Self { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole space.
    pub fn full(p: u32, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        Self { p, dim, rows, pivots: (0..dim).collect() }
    }

    pub fn from_vectors(p: u32, dim: usize, vs: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut e = Self::new(p, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Subtracts the span from `v`; afterwards `v` is zero on every pivot.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c];
            if coef != 0 {
                axpy(v, self.p - coef, row, self.p);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv_mod(v[c], self.p);
        for x in v.iter_mut() {
            *x = mulmod(*x, scale, self.p);
        }
        for row in &mut self.rows {
            let coef = row[c];
            if coef != 0 {
                axpy(row, self.p - coef, &v, self.p);
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    /// Coordinates outside the pivot columns, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Coordinates of `v` in the quotient `F_p^dim / span`, with respect to
    /// the images of the unit vectors on [`Self::free_columns`].
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.free_columns().into_iter().map(|i| w[i]).collect()
    }
}

/// Rank of a list of vectors.
pub fn rank(p: u32, dim: usize, vs: impl IntoIterator<Item = Vec<u32>>) -> usize {
    Echelon::from_vectors(p, dim, vs).rank()
}

pub fn unit(g: &FiniteGroupTable, x: u32) -> Vec<u32> {
    let mut v = vec![0; g.order()];
    v[x as usize] = 1;
    v
}

/// `v * s` for a group element `s`.
pub fn right_mul_elem(g: &FiniteGroupTable, v: &[u32], s: u32) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    for (x, &c) in v.iter().enumerate() {
        out[g.mul(x as u32, s) as usize] = c;
    }
    out
}

/// `s * v` for a group element `s`.
pub fn left_mul_elem(g: &FiniteGroupTable, s: u32, v: &[u32]) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    for (x, &c) in v.iter().enumerate() {
        out[g.mul(s, x as u32) as usize] = c;
    }
    out
}

/// `v * (s - 1)`.
pub fn right_mul_aug(g: &FiniteGroupTable, v: &[u32], s: u32) -> Vec<u32> {
    let p = g.prime();
    let mut out = right_mul_elem(g, v, s);
    axpy(&mut out, p - 1, v, p);
    out
}

pub fn algebra_mul(g: &FiniteGroupTable, u: &[u32], v: &[u32]) -> Vec<u32> {
    let p = g.prime();
    let mut out = vec![0u64; u.len()];
    for (x, &a) in u.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (y, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
            let z = g.mul(x as u32, y as u32) as usize;
            out[z] = (out[z] + a as u64 * b as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

pub fn algebra_add(u: &[u32], v: &[u32], p: u32) -> Vec<u32> {
    let mut out = u.to_vec();
    axpy(&mut out, 1, v, p);
    out
}

pub fn algebra_neg(v: &[u32], p: u32) -> Vec<u32> {
    v.iter().map(|&x| (p - x) % p).collect()
}
