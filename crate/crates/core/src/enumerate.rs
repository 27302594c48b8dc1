//! Exhaustive generation of `S_n^d` and the brute-force counters built on it.
//!
//! Members are produced in row-lexicographic order. The stream splits into
//! independent partitions by fixing the first free row, and every counter here
//! folds the partitions in parallel and reduces with exact addition.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::patterns::{self, Pattern, PatternError};
use crate::perm::{LevelKind, MultiPermutation};

pub const DEFAULT_MAX_STATES: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("state space has {states} members, above the limit of {limit}")]
    StateSpaceTooLarge { states: BigUint, limit: BigUint },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("invalid pattern in predicate: {0}")]
    Pattern(#[from] PatternError),
    #[error("dimension must be at least 2 and length at least 1 (got d={d}, n={n})")]
    BadShape { d: usize, n: usize },
}

/// Which permutations to visit, with an explicit cap on the state count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationScope {
    pub d: usize,
    pub n: usize,
    pub canonical_only: bool,
    pub max_states: BigUint,
}

impl EnumerationScope {
    pub fn all(d: usize, n: usize) -> Self {
        EnumerationScope { d, n, canonical_only: false, max_states: DEFAULT_MAX_STATES.into() }
    }

    pub fn canonical(d: usize, n: usize) -> Self {
        EnumerationScope { canonical_only: true, ..Self::all(d, n) }
    }

    pub fn with_max_states(mut self, limit: impl Into<BigUint>) -> Self {
        self.max_states = limit.into();
        self
    }

    fn free_rows(&self) -> usize {
        if self.canonical_only {
            self.d - 2
        } else {
            self.d - 1
        }
    }

    /// `(n!)^(d-1)`, or `(n!)^(d-2)` for the canonical restriction.
    pub fn state_count(&self) -> BigUint {
        let fact: BigUint = (1..=self.n as u64).map(BigUint::from).product();
        num_traits::pow(fact, self.free_rows())
    }

    pub fn check(&self) -> Result<(), EnumError> {
        if self.d < 2 || self.n == 0 {
            return Err(EnumError::BadShape { d: self.d, n: self.n });
        }
        let states = self.state_count();
        if states > self.max_states {
            return Err(EnumError::StateSpaceTooLarge { states, limit: self.max_states.clone() });
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn lex_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// One independent slice of a scope: the first free row is pinned.
#[derive(Debug, Clone)]
pub struct Partition<'a> {
    table: &'a [Vec<u32>],
    canonical: bool,
    free_rows: usize,
    lead: usize,
}

impl Partition<'_> {
    /// Visits every member of the partition, reusing one buffer.
    pub fn for_each(&self, mut f: impl FnMut(&MultiPermutation)) {
        let identity: Vec<u32> = (0..self.table[0].len() as u32).collect();
        let mut rows = Vec::with_capacity(self.free_rows + 1);
        if self.canonical {
            rows.push(identity.clone());
        }
        if self.free_rows == 0 {
            f(&MultiPermutation::from_rows_unchecked(rows));
            return;
        }
        rows.push(self.table[self.lead].clone());
        let tail = self.free_rows - 1;
        rows.extend(std::iter::repeat_n(identity, tail));
        let offset = rows.len() - tail;
        let mut perm = MultiPermutation::from_rows_unchecked(rows);
        let mut idx = vec![0usize; tail];
        loop {
            f(&perm);
            // odometer over the trailing rows, last row fastest
            let mut pos = tail;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < self.table.len() {
                    break;
                }
                idx[pos] = 0;
            }
            let rows = perm.rows_mut();
            for (p, &i) in idx.iter().enumerate().skip(pos) {
                rows[offset + p].clone_from(&self.table[i]);
            }
        }
    }
}

/// Owns the permutation table for a validated scope.
#[derive(Debug, Clone)]
pub struct Enumeration {
    scope: EnumerationScope,
    table: Vec<Vec<u32>>,
}

impl Enumeration {
    pub fn new(scope: EnumerationScope) -> Result<Self, EnumError> {
        scope.check()?;
        let table = lex_permutations(scope.n);
        Ok(Enumeration { scope, table })
    }

    pub fn scope(&self) -> &EnumerationScope {
        &self.scope
    }

    pub fn partitions(&self) -> Vec<Partition<'_>> {
        let free_rows = self.scope.free_rows();
        let leads = if free_rows == 0 { 1 } else { self.table.len() };
        (0..leads)
            .map(|lead| Partition {
                table: &self.table,
                canonical: self.scope.canonical_only,
                free_rows,
                lead,
            })
            .collect()
    }

    /// Sequential, lexicographic traversal.
    pub fn for_each(&self, mut f: impl FnMut(&MultiPermutation)) {
        for p in self.partitions() {
            p.for_each(&mut f);
        }
    }

    /// Parallel fold over partitions; `fold` runs once per member.
    pub fn fold<T, I, F, R>(&self, init: I, fold: F, reduce: R) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, &MultiPermutation) + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        self.partitions()
            .into_par_iter()
            .map(|p| {
                let mut acc = init();
                p.for_each(|perm| fold(&mut acc, perm));
                acc
            })
            .reduce(&init, &reduce)
    }

    pub fn count_where<F>(&self, pred: F) -> BigUint
    where
        F: Fn(&MultiPermutation) -> bool + Sync + Send,
    {
        let n: u64 = self.fold(|| 0u64, |acc, p| *acc += u64::from(pred(p)), |a, b| a + b);
        BigUint::from(n)
    }

    /// Members satisfying `pred`, in enumeration order.
    pub fn collect_where<F>(&self, pred: F) -> Vec<MultiPermutation>
    where
        F: Fn(&MultiPermutation) -> bool + Sync + Send,
    {
        self.partitions()
            .into_par_iter()
            .map(|p| {
                let mut out = Vec::new();
                p.for_each(|perm| {
                    if pred(perm) {
                        out.push(perm.clone());
                    }
                });
                out
            })
            .flatten()
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = MultiPermutation> + '_ {
        // materialize one partition at a time
        self.partitions().into_iter().flat_map(|p| {
            let mut members = Vec::new();
            p.for_each(|perm| members.push(perm.clone()));
            members
        })
    }
}

/// Every member of the scope, in row-lexicographic order.
pub fn iterate(scope: &EnumerationScope) -> Result<Vec<MultiPermutation>, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    Ok(e.iter().collect())
}

/// Named predicates usable from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    WeaklyIncreasing,
    Unimodal,
    Hoe,
    CompletePlateau,
    Avoids(Pattern),
    Contains(Pattern),
}

impl Predicate {
    pub fn holds(&self, levels: &[u64]) -> bool {
        match self {
            Predicate::WeaklyIncreasing => patterns::is_weakly_increasing(levels),
            Predicate::Unimodal => patterns::is_unimodal(levels),
            Predicate::Hoe => patterns::is_hoe(levels),
            Predicate::CompletePlateau => patterns::is_complete_plateau(levels),
            Predicate::Avoids(p) => !patterns::contains_in_slice(levels, p),
            Predicate::Contains(p) => patterns::contains_in_slice(levels, p),
        }
    }
}

impl FromStr for Predicate {
    type Err = EnumError;

    /// `weakly-increasing`, `unimodal`, `hoe`, `complete-plateau`,
    /// `avoids:<pattern>` or `contains:<pattern>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(p) = s.strip_prefix("avoids:") {
            return Ok(Predicate::Avoids(p.parse()?));
        }
        if let Some(p) = s.strip_prefix("contains:") {
            return Ok(Predicate::Contains(p.parse()?));
        }
        match s.replace('_', "-").as_str() {
            "weakly-increasing" | "wi" => Ok(Predicate::WeaklyIncreasing),
            "unimodal" => Ok(Predicate::Unimodal),
            "hoe" => Ok(Predicate::Hoe),
            "complete-plateau" => Ok(Predicate::CompletePlateau),
            _ => Err(EnumError::UnknownPredicate(s.to_string())),
        }
    }
}

fn level_fold<F>(e: &Enumeration, kind: LevelKind, f: F) -> u64
where
    F: Fn(&[u64]) -> u64 + Sync + Send,
{
    e.fold(
        || (0u64, Vec::new()),
        |(acc, buf), perm| {
            perm.fill_levels(kind, buf);
            *acc += f(buf);
        },
        |a, b| (a.0 + b.0, Vec::new()),
    )
    .0
}

/// `|{Π ∈ Ca(S_n^3) : exactly k repeated levels under MaxEntry}|`.
pub fn oracle_r(n: usize, k: usize) -> Result<BigUint, EnumError> {
    Ok(r_distribution(n)?.get(k).cloned().unwrap_or_default())
}

/// The whole brute-force row `k -> R(n, k)`.
pub fn r_distribution(n: usize) -> Result<Vec<BigUint>, EnumError> {
    if n == 0 {
        // the empty permutation, with no repeated levels
        return Ok(vec![BigUint::one()]);
    }
    r_distribution_in(&EnumerationScope::canonical(3, n))
}

pub fn r_distribution_in(scope: &EnumerationScope) -> Result<Vec<BigUint>, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    let width = scope.n / 2 + 2;
    let counts = e.fold(
        || (vec![0u64; width], Vec::new()),
        |(acc, buf), perm| {
            perm.fill_levels(LevelKind::MaxEntry, buf);
            acc[patterns::repeated_in_slice(buf)] += 1;
        },
        |mut a, b| {
            a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
            a
        },
    );
    let mut out: Vec<BigUint> = counts.0.into_iter().map(BigUint::from).collect();
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

pub fn oracle_count(
    scope: &EnumerationScope,
    kind: LevelKind,
    predicate: &Predicate,
) -> Result<BigUint, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    Ok(level_fold(&e, kind, |lv| u64::from(predicate.holds(lv))).into())
}

/// Library form of [`oracle_count`] taking an arbitrary predicate.
pub fn oracle_count_by<F>(scope: &EnumerationScope, pred: F) -> Result<BigUint, EnumError>
where
    F: Fn(&MultiPermutation) -> bool + Sync + Send,
{
    Ok(Enumeration::new(scope.clone())?.count_where(pred))
}

/// Sum over the scope of the occurrence count of `pattern`.
pub fn oracle_total_pattern(
    scope: &EnumerationScope,
    kind: LevelKind,
    pattern: &Pattern,
) -> Result<BigUint, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    Ok(level_fold(&e, kind, |lv| patterns::count_in_slice(lv, pattern)).into())
}

/// Totals of ascents, descents and plateaux over the scope.
pub fn oracle_stat_totals(
    scope: &EnumerationScope,
    kind: LevelKind,
) -> Result<patterns::PatternStats, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    Ok(e.fold(
        || (patterns::PatternStats::default(), Vec::new()),
        |(acc, buf), perm| {
            perm.fill_levels(kind, buf);
            let s = patterns::stats_of_slice(buf);
            acc.ascents += s.ascents;
            acc.descents += s.descents;
            acc.plateaux += s.plateaux;
        },
        |mut a, b| {
            a.0.ascents += b.0.ascents;
            a.0.descents += b.0.descents;
            a.0.plateaux += b.0.plateaux;
            a
        },
    )
    .0)
}

/// Observed extremes and set sizes under EntrySum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSetSummary {
    /// Smallest `level_max` seen (`m_{d,n}`).
    pub m_min_observed: u64,
    /// Largest `level_min` seen (`m*_{d,n}`).
    pub m_max_observed: u64,
    pub minimal: BigUint,
    pub maximal: BigUint,
    pub minimax: BigUint,
    pub complete_plateau: BigUint,
    /// `(c, |M^{+c}|)` for each requested `c`.
    pub c_bounded: Vec<(u64, BigUint)>,
    pub total: BigUint,
}

pub fn oracle_level_sets(d: usize, n: usize, c_list: &[u64]) -> Result<LevelSetSummary, EnumError> {
    oracle_level_sets_in(&EnumerationScope::all(d, n), c_list)
}

/// Histogram of `(level_max, level_min)` pairs, reduced to the summary.
pub fn oracle_level_sets_in(
    scope: &EnumerationScope,
    c_list: &[u64],
) -> Result<LevelSetSummary, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    let hist = e.fold(
        || (BTreeMap::<(u64, u64), u64>::new(), Vec::new()),
        |(acc, buf), perm| {
            perm.fill_levels(LevelKind::EntrySum, buf);
            let hi = buf.iter().copied().max().unwrap_or(0);
            let lo = buf.iter().copied().min().unwrap_or(0);
            *acc.entry((hi, lo)).or_default() += 1;
        },
        |mut a, b| {
            for (k, v) in b.0 {
                *a.0.entry(k).or_default() += v;
            }
            a
        },
    )
    .0;
    let m_min = hist.keys().map(|&(hi, _)| hi).min().unwrap_or(0);
    let m_star = hist.keys().map(|&(_, lo)| lo).max().unwrap_or(0);
    let sum = |f: &dyn Fn(u64, u64) -> bool| -> BigUint {
        hist.iter().filter(|(&(hi, lo), _)| f(hi, lo)).map(|(_, &c)| BigUint::from(c)).sum()
    };
    Ok(LevelSetSummary {
        m_min_observed: m_min,
        m_max_observed: m_star,
        minimal: sum(&|hi, _| hi == m_min),
        maximal: sum(&|_, lo| lo == m_star),
        minimax: sum(&|hi, lo| hi == m_min && lo == m_star),
        complete_plateau: sum(&|hi, lo| hi == lo),
        c_bounded: c_list.iter().map(|&c| (c, sum(&|hi, _| hi <= m_min + c))).collect(),
        total: sum(&|_, _| true),
    })
}

/// Number of interior peaks of an ordinary permutation.
pub fn peak_count(row: &[u32]) -> usize {
    row.windows(3).filter(|w| w[0] < w[1] && w[2] < w[1]).count()
}

/// `|{π ∈ S_n : π has exactly k peaks}|`.
pub fn oracle_peaks(n: usize, k: usize) -> Result<BigUint, EnumError> {
    Ok(peak_distribution(n)?.get(k).cloned().unwrap_or_default())
}

pub fn peak_distribution(n: usize) -> Result<Vec<BigUint>, EnumError> {
    if n == 0 {
        return Ok(vec![BigUint::one()]);
    }
    let e = Enumeration::new(EnumerationScope::all(2, n))?;
    let width = n / 2 + 1;
    let counts = e.fold(
        || vec![0u64; width],
        |acc, perm| acc[peak_count(&perm.rows()[0])] += 1,
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// How often each possible column occurs across `S_n^d`.
pub fn oracle_element_multiplicity(
    d: usize,
    n: usize,
) -> Result<BTreeMap<Vec<u32>, BigUint>, EnumError> {
    oracle_element_multiplicity_in(&EnumerationScope::all(d, n))
}

pub fn oracle_element_multiplicity_in(
    scope: &EnumerationScope,
) -> Result<BTreeMap<Vec<u32>, BigUint>, EnumError> {
    let e = Enumeration::new(scope.clone())?;
    let (n, rows) = (scope.n, scope.d - 1);
    let cells = n.pow(rows as u32);
    let encode = |col: &mut dyn Iterator<Item = u32>| col.fold(0usize, |a, v| a * n + v as usize);
    let tally = e.fold(
        || vec![0u64; cells],
        |acc, perm| {
            for i in 0..n {
                acc[encode(&mut perm.rows().iter().map(|r| r[i]))] += 1;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(tally
        .into_iter()
        .enumerate()
        .map(|(code, count)| {
            let mut col = vec![0u32; rows];
            let mut c = code;
            for slot in col.iter_mut().rev() {
                *slot = (c % n) as u32;
                c /= n;
            }
            (col, BigUint::from(count))
        })
        .collect())
}

/// Column tallies grouped by EntrySum level.
pub fn level_totals(multiplicity: &BTreeMap<Vec<u32>, BigUint>) -> BTreeMap<u64, BigUint> {
    let mut out = BTreeMap::new();
    for (col, count) in multiplicity {
        let level: u64 = col.iter().map(|&v| u64::from(v)).sum();
        *out.entry(level).or_insert_with(BigUint::zero) += count;
    }
    out
}

/// Convenience for callers holding a `BigUint` that is known to be small.
pub fn small(n: &BigUint) -> u64 {
    n.to_u64().expect("count exceeds u64")
}
