//! Text format for user-supplied groups.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! prime 3
//! order 9
//! table
//! 0 1 2 3 4 5 6 7 8
//! ...              (order rows, element 0 is the identity)
//! gens 1 3         (images of x1, x2, ...)
//! rel x1^3         (any number of relators)
//! rel X1X2x1x2
//! ```

use super::magnus::Word;
use super::presentation::PresentationData;
use super::table::{FiniteGroupTable, DEFAULT_SIZE_LIMIT};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroupInput {
    pub group: FiniteGroupTable,
    /// Empty when the file has no `gens` line.
    pub generators: Vec<u32>,
    pub relators: Vec<Word>,
}

impl GroupInput {
    pub fn into_presentation(self) -> Result<PresentationData> {
        if self.generators.is_empty() {
            return Err(Error::Parse("a presentation needs a 'gens' line".into()));
        }
        PresentationData::new(self.group, self.generators, self.relators)
    }
}

pub fn parse_group_input(text: &str) -> Result<GroupInput> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut prime = None;
    let mut order = None;
    let mut rows = None;
    let mut generators = Vec::new();
    let mut relators = Vec::new();
    let num = |lineno: usize, s: &str| {
        s.parse::<u32>().map_err(|_| Error::Parse(format!("line {lineno}: '{s}' is not a number")))
    };
    while let Some((lineno, line)) = lines.next() {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "prime" => prime = Some(num(lineno, rest)?),
            "order" => {
                let n = num(lineno, rest)? as usize;
                if n > DEFAULT_SIZE_LIMIT {
                    return Err(Error::SizeLimit { order: n, limit: DEFAULT_SIZE_LIMIT });
                }
                order = Some(n);
            }
            "table" => {
                let n = order.ok_or_else(|| Error::Parse(format!("line {lineno}: 'order' must precede 'table'")))?;
                let mut table = Vec::with_capacity(n);
                for _ in 0..n {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| Error::Parse(format!("table ends early; expected {n} rows")))?;
                    let row = row.split_whitespace().map(|s| num(ln, s)).collect::<Result<Vec<_>>>()?;
                    table.push(row);
                }
                rows = Some(table);
            }
            "gens" => {
                generators = rest.split_whitespace().map(|s| num(lineno, s)).collect::<Result<Vec<_>>>()?;
            }
            "rel" => relators.push(rest.parse::<Word>()?),
            other => return Err(Error::Parse(format!("line {lineno}: unknown keyword '{other}'"))),
        }
    }
    let prime = prime.ok_or_else(|| Error::Parse("missing 'prime' line".into()))?;
    let rows = rows.ok_or_else(|| Error::Parse("missing 'table' section".into()))?;
    let group = FiniteGroupTable::new(prime, rows)?;
    Ok(GroupInput { group, generators, relators })
}
