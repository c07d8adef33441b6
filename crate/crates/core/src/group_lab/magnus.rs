//! Words in a free group, their truncated Magnus expansions over `F_p`, and
//! Fox derivatives of those expansions.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// Zero-based generator index.
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the free group on `x1, x2, ...`.
///
/// Parsed from strings such as `x1^3`, `X1X2x1x2` (capitals are inverses)
/// or `x1 x2 X1 X2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letter(generator: usize) -> Self {
        Word(vec![Letter { generator, inverse: false }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| Letter { inverse: !l.inverse, ..*l }).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: u32) -> Self {
        Word(self.0.iter().copied().cycle().take(self.0.len() * k as usize).collect())
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Self {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(last) if last.generator == l.generator && last.inverse != l.inverse => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Number of generators referenced, i.e. one more than the largest index.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.generator + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("word '{s}': {msg}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        let digits = |i: &mut usize| {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect::<String>()
        };
        if chars == ['1'] {
            return Ok(Word::default());
        }
        while i < chars.len() {
            let inverse = match chars[i] {
                'x' => false,
                'X' => true,
                c => return Err(bad(&format!("unexpected '{c}'"))),
            };
            i += 1;
            let idx: usize = digits(&mut i).parse().map_err(|_| bad("missing generator index"))?;
            if idx == 0 {
                return Err(bad("generators are numbered from 1"));
            }
            let mut exp = 1u32;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                exp = digits(&mut i).parse().map_err(|_| bad("missing exponent"))?;
            }
            for _ in 0..exp {
                out.push(Letter { generator: idx - 1, inverse });
            }
        }
        Ok(Word(out))
    }
}

/// Element of `F_p<<X_1, ..., X_d>>` modulo terms of degree greater than `degree_cap`.
///
/// Monomials are words in the variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcTruncPoly {
    prime: u32,
    vars: usize,
    degree_cap: usize,
    terms: BTreeMap<Vec<u8>, u32>,
}

impl NcTruncPoly {
    pub fn zero(prime: u32, vars: usize, degree_cap: usize) -> Self {
        Self { prime, vars, degree_cap, terms: BTreeMap::new() }
    }

    pub fn one(prime: u32, vars: usize, degree_cap: usize) -> Self {
        let mut z = Self::zero(prime, vars, degree_cap);
        z.add_term(Vec::new(), 1);
        z
    }

    pub fn variable(prime: u32, vars: usize, degree_cap: usize, i: usize) -> Self {
        let mut z = Self::zero(prime, vars, degree_cap);
        z.add_term(vec![i as u8], 1);
        z
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], u32)> {
        self.terms.iter().map(|(w, &c)| (w.as_slice(), c))
    }

    pub fn coeff(&self, monomial: &[u8]) -> u32 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&[])
    }

    /// Least total degree of a nonzero term; `None` for zero.
    pub fn level(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    fn add_term(&mut self, w: Vec<u8>, c: u32) {
        if w.len() > self.degree_cap || c.is_multiple_of(self.prime) {
            return;
        }
        let p = self.prime;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c % p);
            }
            Entry::Occupied(mut o) => {
                let sum = (*o.get() + c) % p;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.prime, self.vars, self.degree_cap);
        for (w, &v) in &self.terms {
            out.add_term(w.clone(), ((v as u64 * c as u64) % self.prime as u64) as u32);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.prime - 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.degree_cap.min(other.degree_cap);
        let mut acc: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        let p = self.prime as u64;
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                if u.len() + v.len() > cap {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                let e = acc.entry(w).or_insert(0);
                *e = (*e + a as u64 * b as u64) % p;
            }
        }
        Self {
            prime: self.prime,
            vars: self.vars.max(other.vars),
            degree_cap: cap,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).map(|(w, c)| (w, c as u32)).collect(),
        }
    }

    /// Same element with a smaller degree cap.
    pub fn truncate(&self, degree_cap: usize) -> Self {
        Self {
            degree_cap,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= degree_cap).map(|(w, &c)| (w.clone(), c)).collect(),
            ..*self
        }
    }

    /// Every prefix of every monomial, including the empty word.
    pub(crate) fn prefixes(&self) -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        for w in self.terms.keys() {
            for k in 0..=w.len() {
                out.insert(w[..k].to_vec());
            }
        }
        out
    }
}

/// Image of `word` under `x_i -> 1 + X_i`, truncated at `degree_cap`, in `vars` variables.
pub fn magnus_embed(word: &Word, prime: u32, vars: usize, degree_cap: usize) -> Result<NcTruncPoly> {
    if word.rank_needed() > vars {
        return Err(Error::InvalidPresentation(format!(
            "word {word} uses x{} but only {vars} generators are available",
            word.rank_needed()
        )));
    }
    let mut out = NcTruncPoly::one(prime, vars, degree_cap);
    for l in word.letters() {
        let x = NcTruncPoly::variable(prime, vars, degree_cap, l.generator);
        let factor = if l.inverse {
            // (1 + X)^-1 = sum_k (-X)^k.
            let mut s = NcTruncPoly::one(prime, vars, degree_cap);
            let mut term = NcTruncPoly::one(prime, vars, degree_cap);
            let minus_x = x.scale(prime - 1);
            for _ in 0..degree_cap {
                term = term.mul(&minus_x);
                s = s.add(&term);
            }
            s
        } else {
            NcTruncPoly::one(prime, vars, degree_cap).add(&x)
        };
        out = out.mul(&factor);
    }
    Ok(out)
}

/// Image of `word - 1`.
pub fn magnus_relator(word: &Word, prime: u32, vars: usize, degree_cap: usize) -> Result<NcTruncPoly> {
    Ok(magnus_embed(word, prime, vars, degree_cap)?.sub(&NcTruncPoly::one(prime, vars, degree_cap)))
}

/// Right Fox derivative: the unique `D_j f` with `f = sum_j (D_j f) X_j`,
/// defined for `f` without constant term.
pub fn fox_derivative(f: &NcTruncPoly, j: usize) -> Result<NcTruncPoly> {
    if f.constant_term() != 0 {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = NcTruncPoly::zero(f.prime, f.vars, f.degree_cap);
    for (w, &c) in &f.terms {
        if w.last() == Some(&(j as u8)) {
            out.add_term(w[..w.len() - 1].to_vec(), c);
        }
    }
    Ok(out)
}
