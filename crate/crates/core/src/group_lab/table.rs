use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::primes::{check_prime, log_exact};

/// Largest group order accepted by default (7^3).
pub const DEFAULT_SIZE_LIMIT: usize = 343;

/// Explicit finite p-group given by its multiplication table.
///
/// Elements are `0..order` with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    prime: u32,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroupTable {
    pub fn new(prime: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        Self::with_limit(prime, rows, DEFAULT_SIZE_LIMIT)
    }

    /// Validates the group axioms and that every element has p-power order.
    pub fn with_limit(prime: u32, rows: Vec<Vec<u32>>, limit: usize) -> Result<Self> {
        check_prime(prime)?;
        let order = rows.len();
        if order > limit {
            return Err(Error::SizeLimit { order, limit });
        }
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if log_exact(order as u64, prime as u64).is_none() {
            return Err(Error::InvalidGroup(format!("order {order} is not a power of {prime}")));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries, expected {order}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x as usize >= order) {
                return Err(Error::InvalidGroup(format!("row {i} references element {bad}")));
            }
            mul.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let inv = (0..order)
            .map(|g| {
                let h = (0..order)
                    .find(|&h| at(g, h) == 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
                if at(h, g) != 0 {
                    return Err(Error::InvalidGroup(format!("inverse of {g} is one-sided")));
                }
                Ok(h as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let table = Self { prime, order, mul, inv };
        for g in 0..order as u32 {
            let o = table.element_order(g);
            if log_exact(o as u64, prime as u64).is_none() {
                return Err(Error::InvalidGroup(format!("element {g} has order {o}")));
            }
        }
        Ok(table)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `log_p |G|`.
    pub fn order_exponent(&self) -> u32 {
        log_exact(self.order as u64, self.prime as u64).expect("validated at construction")
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = 0;
        for _ in 0..k % self.element_order(a) as u64 {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    pub fn exponent(&self) -> usize {
        (0..self.order as u32).map(|g| self.element_order(g)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generate(&self, gens: impl IntoIterator<Item = u32>) -> Vec<u32> {
        let gens: Vec<u32> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order as u32).filter(|&g| seen[g as usize]).collect()
    }

    /// A generating set found greedily; its size is the minimal number of
    /// generators for a p-group only when the choice happens to be good, but
    /// it always generates.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        while span.len() < self.order {
            // Prefer an element of maximal order outside the current span.
            let next = (0..self.order as u32)
                .filter(|g| span.binary_search(g).is_err())
                .max_by_key(|&g| (self.element_order(g), std::cmp::Reverse(g)))
                .expect("span is a proper subset");
            gens.push(next);
            span = self.generate(gens.iter().copied());
        }
        gens
    }

    /// Subgroup generated by the `k`-th powers of the elements of `h`.
    pub fn power_subgroup(&self, h: &[u32], k: u64) -> Vec<u32> {
        self.generate(h.iter().map(|&x| self.pow(x, k)))
    }

    /// `[G, h]` for a subgroup `h`.
    pub fn commutator_with_group(&self, h: &[u32]) -> Vec<u32> {
        let mut comms = Vec::new();
        let mut seen = vec![false; self.order];
        for g in 0..self.order as u32 {
            for &x in h {
                let c = self.commutator(g, x);
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    comms.push(c);
                }
            }
        }
        self.generate(comms)
    }
}

/// `gamma_1 = G, gamma_{i+1} = [G, gamma_i]`, listed until the trivial group
/// (included as the final entry).
pub fn lower_central_series(g: &FiniteGroupTable) -> Vec<Vec<u32>> {
    let mut chain = vec![(0..g.order() as u32).collect::<Vec<_>>()];
    loop {
        let last = chain.last().unwrap();
        if last.len() == 1 {
            return chain;
        }
        let next = g.commutator_with_group(last);
        if next.len() == last.len() {
            // Not nilpotent; cannot happen for a p-group.
            return chain;
        }
        chain.push(next);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(u32),
    ElemAbelian(u32),
    Heisenberg,
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown group '{s}'; expected cyclic:k, elemab:d or heisenberg"));
        match s.split_once(':') {
            Some(("cyclic", k)) => Ok(GroupKind::Cyclic(k.parse().map_err(|_| bad())?)),
            Some(("elemab", d)) => Ok(GroupKind::ElemAbelian(d.parse().map_err(|_| bad())?)),
            None if s == "heisenberg" => Ok(GroupKind::Heisenberg),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupKind::ElemAbelian(d) => write!(f, "elemab:{d}"),
            GroupKind::Heisenberg => write!(f, "heisenberg"),
        }
    }
}

pub fn build_group(kind: GroupKind, p: u32) -> Result<FiniteGroupTable> {
    build_group_with_limit(kind, p, DEFAULT_SIZE_LIMIT)
}

pub fn build_group_with_limit(kind: GroupKind, p: u32, limit: usize) -> Result<FiniteGroupTable> {
    check_prime(p)?;
    let exp = match kind {
        GroupKind::Cyclic(k) => k,
        GroupKind::ElemAbelian(d) => d,
        GroupKind::Heisenberg => {
            if p == 2 {
                return Err(Error::InvalidArgument("the exponent-p Heisenberg group needs p odd".into()));
            }
            3
        }
    };
    let order = (p as usize)
        .checked_pow(exp)
        .filter(|&n| n <= limit)
        .ok_or(Error::SizeLimit { order: (p as usize).saturating_pow(exp), limit })?;
    let pu = p as usize;
    let rows: Vec<Vec<u32>> = match kind {
        GroupKind::Cyclic(_) => (0..order)
            .map(|a| (0..order).map(|b| ((a + b) % order) as u32).collect())
            .collect(),
        GroupKind::ElemAbelian(d) => {
            let add = |mut a: usize, mut b: usize| {
                let (mut out, mut place) = (0, 1);
                for _ in 0..d {
                    out += ((a % pu + b % pu) % pu) * place;
                    a /= pu;
                    b /= pu;
                    place *= pu;
                }
                out as u32
            };
            (0..order).map(|a| (0..order).map(|b| add(a, b)).collect()).collect()
        }
        GroupKind::Heisenberg => {
            // (x, y, z) <-> [[1, x, z], [0, 1, y], [0, 0, 1]], index x + p y + p^2 z.
            let split = |i: usize| (i % pu, (i / pu) % pu, i / (pu * pu));
            (0..order)
                .map(|a| {
                    let (x, y, z) = split(a);
                    (0..order)
                        .map(|b| {
                            let (x2, y2, z2) = split(b);
                            let nx = (x + x2) % pu;
                            let ny = (y + y2) % pu;
                            let nz = (z + z2 + x * y2) % pu;
                            (nx + pu * ny + pu * pu * nz) as u32
                        })
                        .collect()
                })
                .collect()
        }
    };
    FiniteGroupTable::with_limit(p, rows, limit)
}

/// Images of the standard generators used by the built-in presentations.
pub fn standard_generators(kind: GroupKind, p: u32) -> Vec<u32> {
    match kind {
        GroupKind::Cyclic(_) => vec![1],
        GroupKind::ElemAbelian(d) => (0..d).map(|i| p.pow(i)).collect(),
        GroupKind::Heisenberg => vec![1, p],
    }
}
