//! Multi-dimensional permutations and their level vectors.
//!
//! A `(d, n)`-permutation is stored as `d - 1` rows, each a bijection on
//! `{0, .., n-1}`. The identity row `0 1 .. n-1` that heads the `d`-line
//! notation is implicit: it is never stored and never contributes to a level.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation needs at least one row of positive length")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRows { row: usize, len: usize, expected: usize },
    #[error("row {row} is not a bijection on 0..{n}")]
    NotABijection { row: usize, n: usize },
    #[error("cannot parse row {0:?}")]
    Parse(String),
}

/// How a column is collapsed to a single level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelKind {
    /// Largest entry of the column.
    MaxEntry,
    /// Sum of the entries of the column.
    EntrySum,
}

impl LevelKind {
    pub fn label(self) -> &'static str {
        match self {
            LevelKind::MaxEntry => "max",
            LevelKind::EntrySum => "sum",
        }
    }
}

impl std::str::FromStr for LevelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" | "levmax" => Ok(LevelKind::MaxEntry),
            "sum" | "levsum" => Ok(LevelKind::EntrySum),
            other => Err(format!("unknown level kind `{other}` (expected max or sum)")),
        }
    }
}

/// A `(d, n)`-permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPermutation {
    n: usize,
    rows: Vec<Vec<u32>>,
}

/// One column `Π_i` of a permutation. `position` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub position: usize,
    pub entries: Vec<u32>,
}

/// The per-column levels of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelVector {
    levels: Vec<u64>,
    kind: LevelKind,
}

impl MultiPermutation {
    /// Validates `rows` and builds a permutation of dimension `rows.len() + 1`.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, PermError> {
        let n = rows.first().map(Vec::len).ok_or(PermError::Empty)?;
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PermError::RaggedRows { row: r, len: row.len(), expected: n });
            }
            seen.iter_mut().for_each(|s| *s = false);
            for &v in row {
                let v = v as usize;
                if v >= n || seen[v] {
                    return Err(PermError::NotABijection { row: r, n });
                }
                seen[v] = true;
            }
        }
        Ok(MultiPermutation { n, rows })
    }

    /// Builds a permutation from one-line strings such as `"01423"`.
    ///
    /// Rows of length at most 10 may be written as bare digit strings;
    /// longer rows need comma or space separated entries.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, PermError> {
        let parsed = rows
            .iter()
            .map(|r| parse_row(r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }

    /// Caller guarantees every row is a bijection of equal length.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        debug_assert!(Self::new(rows.clone()).is_ok());
        let n = rows[0].len();
        MultiPermutation { n, rows }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut [Vec<u32>] {
        &mut self.rows
    }

    /// The dimension `d` (stored rows + 1).
    pub fn dimension(&self) -> usize {
        self.rows.len() + 1
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Column `Π_position`, 1-based.
    pub fn element(&self, position: usize) -> Option<Element> {
        if position == 0 || position > self.n {
            return None;
        }
        Some(Element { position, entries: self.column(position - 1).collect() })
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (1..=self.n).map(move |p| Element { position: p, entries: self.column(p - 1).collect() })
    }

    fn column(&self, idx: usize) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(move |r| r[idx])
    }

    pub fn level_vector(&self, kind: LevelKind) -> LevelVector {
        let mut levels = Vec::with_capacity(self.n);
        self.fill_levels(kind, &mut levels);
        LevelVector { levels, kind }
    }

    /// Writes the levels into `out`, reusing its allocation.
    pub fn fill_levels(&self, kind: LevelKind, out: &mut Vec<u64>) {
        out.clear();
        match kind {
            LevelKind::MaxEntry => out.extend((0..self.n).map(|i| {
                self.column(i).max().map(u64::from).unwrap_or(0)
            })),
            LevelKind::EntrySum => {
                out.extend((0..self.n).map(|i| self.column(i).map(u64::from).sum::<u64>()))
            }
        }
    }

    /// Replaces every entry `v` by `n - 1 - v` in every row.
    pub fn complement(&self) -> Self {
        let top = self.n as u32 - 1;
        let rows = self.rows.iter().map(|r| r.iter().map(|&v| top - v).collect()).collect();
        MultiPermutation { n: self.n, rows }
    }

    /// Reverses the order of the columns.
    pub fn reverse(&self) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().rev().copied().collect()).collect();
        MultiPermutation { n: self.n, rows }
    }

    /// True when the first stored row is `0 1 .. n-1`.
    pub fn is_canonical(&self) -> bool {
        self.rows[0].iter().enumerate().all(|(i, &v)| v as usize == i)
    }
}

fn parse_row(s: &str) -> Result<Vec<u32>, PermError> {
    let s = s.trim();
    let parse_err = || PermError::Parse(s.to_string());
    if s.contains(|c: char| c == ',' || c.is_whitespace()) {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| parse_err()))
            .collect()
    } else {
        s.chars().map(|c| c.to_digit(10).ok_or_else(parse_err)).collect()
    }
}

impl fmt::Display for MultiPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n > 10;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            let parts: Vec<String> = row.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(if wide { "," } else { "" }))?;
        }
        Ok(())
    }
}

impl LevelVector {
    pub fn new(levels: Vec<u64>, kind: LevelKind) -> Self {
        LevelVector { levels, kind }
    }

    pub fn levels(&self) -> &[u64] {
        &self.levels
    }

    pub fn kind(&self) -> LevelKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn min(&self) -> u64 {
        self.levels.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> u64 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn reversed(&self) -> Self {
        LevelVector { levels: self.levels.iter().rev().copied().collect(), kind: self.kind }
    }
}
