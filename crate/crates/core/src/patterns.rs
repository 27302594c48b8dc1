//! Pattern words over level vectors.
//!
//! A pattern is a word over `{1, .., s}` using every letter. An occurrence is
//! a choice of columns whose levels are order-isomorphic to the word, with
//! equal letters forcing equal levels. Consecutive patterns (written with a
//! `c:` prefix) only match runs of adjacent columns.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{LevelKind, LevelVector, MultiPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern must contain at least one letter")]
    Empty,
    #[error("pattern letter {0} is not in 1..=9")]
    BadLetter(char),
    #[error("pattern uses letter {max} but skips {missing}")]
    MissingLetter { max: u8, missing: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    letters: Vec<u8>,
    consecutive: bool,
}

impl Pattern {
    pub fn new(letters: Vec<u8>, consecutive: bool) -> Result<Self, PatternError> {
        let max = *letters.iter().max().ok_or(PatternError::Empty)?;
        if let Some(&bad) = letters.iter().find(|&&l| l == 0) {
            return Err(PatternError::BadLetter(char::from(b'0' + bad)));
        }
        for v in 1..=max {
            if !letters.contains(&v) {
                return Err(PatternError::MissingLetter { max, missing: v });
            }
        }
        Ok(Pattern { letters, consecutive })
    }

    /// Classical pattern from a digit string.
    pub fn classical(word: &str) -> Result<Self, PatternError> {
        Self::new(parse_letters(word)?, false)
    }

    /// Consecutive pattern from a digit string.
    pub fn consecutive(word: &str) -> Result<Self, PatternError> {
        Self::new(parse_letters(word)?, true)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn is_consecutive(&self) -> bool {
        self.consecutive
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Pattern { letters: self.letters.iter().rev().copied().collect(), consecutive: self.consecutive }
    }

    /// The all-ones consecutive pattern of length `k` (a `k`-plateau).
    pub fn plateau(k: usize) -> Self {
        Pattern { letters: vec![1; k.max(1)], consecutive: true }
    }
}

fn parse_letters(word: &str) -> Result<Vec<u8>, PatternError> {
    word.chars()
        .map(|c| match c.to_digit(10) {
            Some(d @ 1..=9) => Ok(d as u8),
            _ => Err(PatternError::BadLetter(c)),
        })
        .collect()
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix("c:") {
            Some(rest) => Pattern::consecutive(rest),
            None => Pattern::classical(s),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.consecutive {
            f.write_str("c:")?;
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Counts of the three consecutive length-2 patterns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternStats {
    pub ascents: u64,
    pub descents: u64,
    pub plateaux: u64,
}

/// Structural flags of a level vector.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub weakly_increasing: bool,
    pub unimodal: bool,
    pub hoe: bool,
    pub complete_plateau: bool,
}

/// Number of occurrences of `pattern` in `levels`.
pub fn count_occurrences(levels: &LevelVector, pattern: &Pattern) -> BigUint {
    BigUint::from(count_in_slice(levels.levels(), pattern))
}

/// Occurrence count over a raw level slice.
pub fn count_in_slice(levels: &[u64], pattern: &Pattern) -> u64 {
    let k = pattern.len();
    if k > levels.len() {
        return 0;
    }
    if pattern.consecutive {
        return levels.windows(k).filter(|w| matches_window(w, &pattern.letters)).count() as u64;
    }
    let mut chosen = Vec::with_capacity(k);
    extend_count(levels, &pattern.letters, 0, &mut chosen, false)
}

/// True when `levels` contains at least one occurrence of `pattern`.
pub fn contains_in_slice(levels: &[u64], pattern: &Pattern) -> bool {
    let k = pattern.len();
    if k > levels.len() {
        return false;
    }
    if pattern.consecutive {
        return levels.windows(k).any(|w| matches_window(w, &pattern.letters));
    }
    let mut chosen = Vec::with_capacity(k);
    extend_count(levels, &pattern.letters, 0, &mut chosen, true) > 0
}

fn matches_window(window: &[u64], letters: &[u8]) -> bool {
    (0..letters.len()).all(|j| {
        (0..j).all(|m| letters[j].cmp(&letters[m]) == window[j].cmp(&window[m]))
    })
}

// Backtracking over increasing index tuples; each new index is checked
// against every earlier choice so inconsistent prefixes are pruned early.
fn extend_count(
    levels: &[u64],
    letters: &[u8],
    start: usize,
    chosen: &mut Vec<u64>,
    stop_at_first: bool,
) -> u64 {
    let j = chosen.len();
    if j == letters.len() {
        return 1;
    }
    let remaining = letters.len() - j;
    let mut total = 0;
    for i in start..=levels.len() - remaining {
        let v = levels[i];
        let ok = chosen
            .iter()
            .zip(letters)
            .all(|(&w, &l)| letters[j].cmp(&l) == v.cmp(&w));
        if !ok {
            continue;
        }
        chosen.push(v);
        total += extend_count(levels, letters, i + 1, chosen, stop_at_first);
        chosen.pop();
        if stop_at_first && total > 0 {
            break;
        }
    }
    total
}

pub fn stats(levels: &LevelVector) -> PatternStats {
    stats_of_slice(levels.levels())
}

pub fn stats_of_slice(levels: &[u64]) -> PatternStats {
    let mut s = PatternStats::default();
    for w in levels.windows(2) {
        match w[0].cmp(&w[1]) {
            Ordering::Less => s.ascents += 1,
            Ordering::Greater => s.descents += 1,
            Ordering::Equal => s.plateaux += 1,
        }
    }
    s
}

/// Number of distinct level values that occur at least twice.
pub fn repeated_level_count(perm: &MultiPermutation, kind: LevelKind) -> usize {
    repeated_in_slice(perm.level_vector(kind).levels())
}

pub fn repeated_in_slice(levels: &[u64]) -> usize {
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    let mut count = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i >= 2 {
            count += 1;
        }
        i = j;
    }
    count
}

pub fn classify(perm: &MultiPermutation, kind: LevelKind) -> Classification {
    classify_slice(perm.level_vector(kind).levels())
}

pub fn classify_slice(levels: &[u64]) -> Classification {
    Classification {
        weakly_increasing: is_weakly_increasing(levels),
        unimodal: is_unimodal(levels),
        hoe: is_hoe(levels),
        complete_plateau: is_complete_plateau(levels),
    }
}

pub fn is_weakly_increasing(levels: &[u64]) -> bool {
    levels.windows(2).all(|w| w[0] <= w[1])
}

/// Strict rise to a single peak, then strict fall. Either run may be empty.
pub fn is_unimodal(levels: &[u64]) -> bool {
    let n = levels.len();
    let mut i = 1;
    while i < n && levels[i - 1] < levels[i] {
        i += 1;
    }
    while i < n && levels[i - 1] > levels[i] {
        i += 1;
    }
    i >= n
}

/// Strictly increasing except for one final descent.
pub fn is_hoe(levels: &[u64]) -> bool {
    let n = levels.len();
    n >= 2
        && levels[n - 2] > levels[n - 1]
        && levels[..n - 1].windows(2).all(|w| w[0] < w[1])
}

pub fn is_complete_plateau(levels: &[u64]) -> bool {
    levels.windows(2).all(|w| w[0] == w[1])
}
