//! OEIS b-files and the registry that ties sequences to generators here.
//!
//! A b-file is plain text: `#` comment lines and data lines `<index> <value>`.
//! Nothing is fetched over the network; callers hand in local files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::{self, EnumerationScope};
use crate::formulas;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("malformed b-file line {0}")]
    MalformedLine(usize),
    #[error("index {index} on line {line} does not increase")]
    NonMonotoneIndex { line: usize, index: i64 },
    #[error("b-file has no data lines")]
    EmptyBFile,
    #[error("bad sequence id {0:?}")]
    BadId(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("no registry entry for {0}")]
    UnknownSequence(String),
    #[error("b-file starts at index {found}, registry offset is {expected}")]
    OffsetMismatch { expected: i64, found: i64 },
    #[error("generator failed: {0}")]
    Generator(String),
    #[error("cannot read b-file: {0}")]
    Io(String),
}

/// `A` followed by six digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceId(u32);

impl SequenceId {
    pub const fn new(number: u32) -> Self {
        SequenceId(number)
    }

    pub fn number(self) -> u32 {
        self.0
    }

    /// Conventional b-file name, `bNNNNNN.txt`.
    pub fn bfile_name(self) -> String {
        format!("b{:06}.txt", self.0)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{:06}", self.0)
    }
}

impl FromStr for SequenceId {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix(['A', 'a']).unwrap_or("");
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(OeisError::BadId(s.to_string()));
        }
        Ok(SequenceId(digits.parse().expect("six digits")))
    }
}

impl Serialize for SequenceId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub id: Option<SequenceId>,
    pub entries: Vec<(i64, BigInt)>,
}

impl BFile {
    pub fn first_index(&self) -> Option<i64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Renders in b-file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(id) = self.id {
            out.push_str(&format!("# {id}\n"));
        }
        for (i, v) in &self.entries {
            out.push_str(&format!("{i} {v}\n"));
        }
        out
    }
}

pub fn parse_bfile(text: &str) -> Result<BFile, OeisError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = lineno + 1;
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(OeisError::MalformedLine(lineno));
        };
        let index: i64 = i.parse().map_err(|_| OeisError::MalformedLine(lineno))?;
        let value: BigInt = v.parse().map_err(|_| OeisError::MalformedLine(lineno))?;
        if entries.last().is_some_and(|(prev, _)| *prev >= index) {
            return Err(OeisError::NonMonotoneIndex { line: lineno, index });
        }
        entries.push((index, value));
    }
    Ok(BFile { id: None, entries })
}

/// Reads a b-file, taking the id from a `bNNNNNN.txt` file name when present.
pub fn read_bfile(path: &Path) -> Result<BFile, OeisError> {
    let text = std::fs::read_to_string(path).map_err(|e| OeisError::Io(format!("{}: {e}", path.display())))?;
    let mut bfile = parse_bfile(&text)?;
    bfile.id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .and_then(|s| s.strip_prefix('b'))
        .and_then(|digits| format!("A{digits}").parse().ok());
    Ok(bfile)
}

/// Named sequences computed by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `WI_n`, the Springer numbers.
    Springer,
    /// `U_n`.
    Unimodal,
    /// `R(n,k)` read by rows.
    RTriangle,
    /// `R(n,k)` for fixed `k`.
    RColumn(usize),
    /// `H_{n,d} = Σ_{k=0}^{n-2} (2^{d-1}-1)^k`, with `H_{1,d} = 0`.
    Hoe(usize),
    /// c-bounded `(3,n)`-permutations.
    CBounded { c: usize, canonical: bool },
    /// Canonical minimal `(4, 2k+1)`-permutations, by brute force.
    CanonicalMinimal4Odd,
}

impl Generator {
    pub fn name(&self) -> String {
        match self {
            Generator::Springer => "springer".into(),
            Generator::Unimodal => "unimodal".into(),
            Generator::RTriangle => "r-triangle".into(),
            Generator::RColumn(k) => format!("r-column:{k}"),
            Generator::Hoe(d) => format!("hoe:{d}"),
            Generator::CBounded { c, canonical: false } => format!("c-bounded:{c}"),
            Generator::CBounded { c, canonical: true } => format!("c-bounded-canonical:{c}"),
            Generator::CanonicalMinimal4Odd => "canonical-minimal-4-odd".into(),
        }
    }

    /// Value at the generator's own index; `None` outside its domain.
    pub fn value(&self, n: i64, max_states: &BigUint) -> Result<Option<BigInt>, OeisError> {
        if n < 0 {
            return Ok(None);
        }
        let u = n as usize;
        let v = match *self {
            Generator::Springer => Some(formulas::wi_value(u)),
            Generator::Unimodal => Some(formulas::u_value(u)),
            Generator::RTriangle => {
                return Ok(r_triangle_flat(u + 1).pop().map(BigInt::from));
            }
            Generator::RColumn(k) => Some(formulas::r_value(u, k)),
            Generator::Hoe(d) if u == 1 => (d >= 2).then(BigUint::zero),
            Generator::Hoe(d) => formulas::hoe_value(u, d).ok(),
            Generator::CBounded { c, canonical } => formulas::c_bounded_value(u, c, canonical).ok(),
            Generator::CanonicalMinimal4Odd => {
                let scope = EnumerationScope::canonical(4, 2 * u + 1).with_max_states(max_states.clone());
                let summary = enumerate::oracle_level_sets_in(&scope, &[])
                    .map_err(|e| OeisError::Generator(e.to_string()))?;
                Some(summary.minimal)
            }
        };
        Ok(v.map(BigInt::from))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Generator {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OeisError::UnknownGenerator(s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| bad())?)),
            None => (s, None),
        };
        Ok(match (head, arg) {
            ("springer", None) => Generator::Springer,
            ("unimodal", None) => Generator::Unimodal,
            ("r-triangle", None) => Generator::RTriangle,
            ("r-column", Some(k)) => Generator::RColumn(k),
            ("hoe", Some(d)) if d >= 2 => Generator::Hoe(d),
            ("c-bounded", Some(c)) => Generator::CBounded { c, canonical: false },
            ("c-bounded-canonical", Some(c)) => Generator::CBounded { c, canonical: true },
            ("canonical-minimal-4-odd", None) => Generator::CanonicalMinimal4Odd,
            _ => return Err(bad()),
        })
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The first `len` terms of the R triangle in row-reading order.
pub fn r_triangle_flat(len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    let mut n = 0;
    while out.len() < len {
        out.extend(formulas::r_row(n));
        n += 1;
    }
    out.truncate(len);
    out
}

/// Number of terms in the first `rows` rows of the R triangle.
pub fn r_triangle_terms(rows: usize) -> usize {
    (0..rows).map(|n| formulas::r_row(n).len()).sum()
}

/// How an OEIS sequence lines up with a generator: the term with OEIS index
/// `i` is the generator's value at `i + shift`. Triangles are flattened in
/// row-reading order and indexed from `oeis_offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceMapping {
    pub id: SequenceId,
    pub generator: Generator,
    pub oeis_offset: i64,
    pub shift: i64,
    /// Terms compared when the caller does not choose a limit.
    pub default_limit: usize,
    /// Alignment not yet confirmed against the published sequence.
    pub provisional: bool,
    pub description: &'static str,
}

impl SequenceMapping {
    pub fn is_triangle(&self) -> bool {
        self.generator == Generator::RTriangle
    }
}

const fn entry(
    id: u32,
    generator: Generator,
    oeis_offset: i64,
    shift: i64,
    default_limit: usize,
    description: &'static str,
) -> SequenceMapping {
    SequenceMapping {
        id: SequenceId::new(id),
        generator,
        oeis_offset,
        shift,
        default_limit,
        provisional: false,
        description,
    }
}

static REGISTRY: [SequenceMapping; 16] = [
    entry(1586, Generator::Springer, 0, 0, 10, "Springer numbers, weakly increasing (3,n)-permutations"),
    entry(104018, Generator::Unimodal, 1, 0, 12, "unimodal (3,n)-permutations"),
    entry(8971, Generator::RTriangle, 0, 0, 20, "R(n,k) read by rows"),
    entry(340, Generator::RColumn(1), 0, 2, 15, "R(n,1)"),
    entry(363, Generator::RColumn(2), 4, 0, 15, "R(n,2)"),
    entry(507, Generator::RColumn(3), 6, 0, 15, "R(n,3)"),
    entry(3462, Generator::Hoe(3), 0, 1, 15, "hoe (3,n)-permutations, (3^n-1)/2"),
    entry(23000, Generator::Hoe(4), 0, 1, 15, "hoe (4,n)-permutations, (7^n-1)/6"),
    entry(135518, Generator::Hoe(5), 0, 1, 15, "hoe (5,n)-permutations, (15^n-1)/14"),
    entry(218734, Generator::Hoe(6), 0, 1, 15, "hoe (6,n)-permutations, (31^n-1)/30"),
    entry(2866, Generator::CBounded { c: 1, canonical: false }, 0, 0, 15, "1-bounded (3,n)-permutations"),
    entry(52700, Generator::CBounded { c: 2, canonical: false }, 0, 0, 15, "2-bounded (3,n)-permutations"),
    entry(8776, Generator::CBounded { c: 2, canonical: true }, 0, 2, 15, "canonical 2-bounded, 2*3^n"),
    entry(2023, Generator::CBounded { c: 3, canonical: true }, 0, 3, 15, "canonical 3-bounded, 6*4^n"),
    entry(235702, Generator::CBounded { c: 4, canonical: true }, 0, 4, 15, "canonical 4-bounded, 24*5^n"),
    SequenceMapping {
        id: SequenceId::new(2047),
        generator: Generator::CanonicalMinimal4Odd,
        oeis_offset: 0,
        shift: 0,
        default_limit: 3,
        provisional: true,
        description: "canonical minimal (4,2k+1)-permutations, tabulated only",
    },
];

/// All registered mappings.
pub fn registry() -> &'static [SequenceMapping] {
    &REGISTRY
}

pub fn lookup(id: SequenceId) -> Result<&'static SequenceMapping, OeisError> {
    registry()
        .iter()
        .find(|m| m.id == id)
        .ok_or_else(|| OeisError::UnknownSequence(id.to_string()))
}

fn big_str<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_big_str<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Match,
    Mismatch,
    /// The index lies outside the generator's domain.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconcileRow {
    pub index: i64,
    #[serde(serialize_with = "big_str")]
    pub expected: BigInt,
    #[serde(serialize_with = "opt_big_str")]
    pub computed: Option<BigInt>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconcileReport {
    pub id: SequenceId,
    pub generator: Generator,
    pub provisional: bool,
    pub compared: usize,
    pub mismatches: usize,
    pub rows: Vec<ReconcileRow>,
    pub pass: bool,
}

/// Compares the first `limit` b-file terms with the mapped generator.
///
/// Passes when at least one term was compared and none disagreed.
pub fn reconcile(mapping: &SequenceMapping, bfile: &BFile, limit: usize) -> Result<ReconcileReport, OeisError> {
    reconcile_guarded(mapping, bfile, limit, &BigUint::from(enumerate::DEFAULT_MAX_STATES))
}

pub fn reconcile_guarded(
    mapping: &SequenceMapping,
    bfile: &BFile,
    limit: usize,
    max_states: &BigUint,
) -> Result<ReconcileReport, OeisError> {
    let first = bfile.first_index().ok_or(OeisError::EmptyBFile)?;
    if first != mapping.oeis_offset {
        return Err(OeisError::OffsetMismatch { expected: mapping.oeis_offset, found: first });
    }
    let terms = &bfile.entries[..limit.min(bfile.len())];
    let flat = if mapping.is_triangle() {
        let last = terms.last().map_or(0, |t| t.0 - mapping.oeis_offset + mapping.shift);
        r_triangle_flat(last.max(-1).saturating_add(1) as usize)
    } else {
        Vec::new()
    };
    let mut rows = Vec::with_capacity(terms.len());
    for (index, expected) in terms {
        let at = index + mapping.shift;
        let computed = if mapping.is_triangle() {
            usize::try_from(at - mapping.oeis_offset)
                .ok()
                .and_then(|i| flat.get(i))
                .cloned()
                .map(BigInt::from)
        } else {
            mapping.generator.value(at, max_states)?
        };
        let status = match &computed {
            None => RowStatus::Skipped,
            Some(c) if c == expected => RowStatus::Match,
            Some(_) => RowStatus::Mismatch,
        };
        rows.push(ReconcileRow { index: *index, expected: expected.clone(), computed, status });
    }
    let compared = rows.iter().filter(|r| r.status != RowStatus::Skipped).count();
    let mismatches = rows.iter().filter(|r| r.status == RowStatus::Mismatch).count();
    Ok(ReconcileReport {
        id: mapping.id,
        generator: mapping.generator,
        provisional: mapping.provisional,
        compared,
        mismatches,
        rows,
        pass: compared > 0 && mismatches == 0,
    })
}

/// Builds the b-file a mapping predicts, for the first `len` indices.
pub fn generate_bfile(mapping: &SequenceMapping, len: usize) -> Result<BFile, OeisError> {
    let max = BigUint::from(enumerate::DEFAULT_MAX_STATES);
    let mut entries = Vec::with_capacity(len);
    if mapping.is_triangle() {
        for (i, v) in r_triangle_flat(len).into_iter().enumerate() {
            entries.push((mapping.oeis_offset + i as i64, BigInt::from(v)));
        }
    } else {
        for i in 0..len as i64 {
            let index = mapping.oeis_offset + i;
            if let Some(v) = mapping.generator.value(index + mapping.shift, &max)? {
                entries.push((index, v));
            }
        }
    }
    Ok(BFile { id: Some(mapping.id), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let b = parse_bfile("0 1\n1 1\n2 3\n3 11").unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b.entries[3], (3, BigInt::from(11)));
        let b = parse_bfile("# comment\n5 10").unwrap();
        assert_eq!(b.entries, vec![(5, BigInt::from(10))]);
        assert_eq!(parse_bfile("1 x"), Err(OeisError::MalformedLine(1)));
        assert_eq!(parse_bfile("0 1\n0 2"), Err(OeisError::NonMonotoneIndex { line: 2, index: 0 }));
        assert_eq!(parse_bfile("0 1 2"), Err(OeisError::MalformedLine(1)));
        assert!(parse_bfile("").unwrap().is_empty());
        let big = parse_bfile("30 123456789012345678901234567890\n").unwrap();
        assert_eq!(big.entries[0].1.to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn ids() {
        let id: SequenceId = "A001586".parse().unwrap();
        assert_eq!(id.to_string(), "A001586");
        assert_eq!(id.bfile_name(), "b001586.txt");
        assert!("A1586".parse::<SequenceId>().is_err());
        assert!("B001586".parse::<SequenceId>().is_err());
    }

    #[test]
    fn registry_generators_round_trip() {
        for m in registry() {
            let name = m.generator.name();
            assert_eq!(name.parse::<Generator>().unwrap(), m.generator, "{}", m.id);
            assert_eq!(lookup(m.id).unwrap().id, m.id);
        }
        assert!("hoe:1".parse::<Generator>().is_err());
        assert!("nothing".parse::<Generator>().is_err());
    }

    #[test]
    fn springer_reconciles() {
        let m = lookup("A001586".parse().unwrap()).unwrap();
        let b = parse_bfile("0 1\n1 1\n2 3\n3 11\n4 57\n5 361\n6 2763\n7 24611\n8 250737\n9 2873041\n").unwrap();
        let r = reconcile(m, &b, 10).unwrap();
        assert!(r.pass);
        assert_eq!(r.compared, 10);
        let shifted = parse_bfile("1 1\n2 3").unwrap();
        assert_eq!(reconcile(m, &shifted, 10), Err(OeisError::OffsetMismatch { expected: 0, found: 1 }));
        let wrong = parse_bfile("0 1\n1 2").unwrap();
        let r = reconcile(m, &wrong, 10).unwrap();
        assert!(!r.pass);
        assert_eq!(r.mismatches, 1);
    }

    #[test]
    fn triangle_flattening() {
        let flat: Vec<u64> = r_triangle_flat(12).iter().map(enumerate::small).collect();
        assert_eq!(flat, vec![1, 1, 1, 1, 1, 5, 1, 18, 5, 1, 58, 61]);
        assert_eq!(r_triangle_terms(8), 20);
        let m = lookup("A008971".parse().unwrap()).unwrap();
        let b = generate_bfile(m, 20).unwrap();
        assert!(reconcile(m, &b, 20).unwrap().pass);
    }

    #[test]
    fn extended_domains() {
        let max = BigUint::from(10u32);
        assert_eq!(Generator::Hoe(3).value(1, &max).unwrap(), Some(BigInt::zero()));
        assert_eq!(Generator::Hoe(3).value(4, &max).unwrap(), Some(BigInt::from(13)));
        assert_eq!(Generator::CBounded { c: 1, canonical: false }.value(1, &max).unwrap(), None);
        assert!(Generator::CanonicalMinimal4Odd.value(2, &max).is_err());
        let max = BigUint::from(enumerate::DEFAULT_MAX_STATES);
        let counts: Vec<_> = (0..3).map(|k| Generator::CanonicalMinimal4Odd.value(k, &max).unwrap().unwrap()).collect();
        assert_eq!(counts, vec![BigInt::from(1), BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn report_serializes_big_values_as_strings() {
        let m = lookup("A001586".parse().unwrap()).unwrap();
        let b = parse_bfile("0 1\n1 1").unwrap();
        let json = serde_json::to_value(reconcile(m, &b, 2).unwrap()).unwrap();
        assert_eq!(json["rows"][1]["expected"], "1");
        assert_eq!(json["id"], "A001586");
        assert_eq!(json["rows"][0]["status"], "match");
    }
}
