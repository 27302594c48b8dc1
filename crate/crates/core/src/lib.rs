//! Multi-dimensional permutations: level statistics, pattern counts and the
//! formulas that enumerate them.
//!
//! A `(d,n)`-permutation is stored as `d-1` rows, each a permutation of
//! `0..n`; an implicit identity row completes it. Each column gets a level,
//! either its largest entry ([`LevelKind::MaxEntry`]) or its entry sum
//! ([`LevelKind::EntrySum`]), and patterns are matched against the resulting
//! level sequence.
//!
//! ```
//! use mdperm::{formulas, LevelKind, MultiPermutation};
//!
//! let p = MultiPermutation::parse_rows(&["01234", "23401", "42031"]).unwrap();
//! assert_eq!(p.level_vector(LevelKind::EntrySum).levels(), &[6, 6, 6, 6, 6]);
//! assert_eq!(formulas::wi_value(5), 361u32.into());
//! ```

pub mod enumerate;
pub mod formulas;
pub mod oeis;
pub mod patterns;
pub mod perm;
pub mod polyreal;
pub mod series;

pub use enumerate::{EnumError, Enumeration, EnumerationScope, Predicate};
pub use formulas::{FormulaError, RTable, ShiftSpec};
pub use patterns::{Classification, Pattern, PatternError, PatternStats};
pub use perm::{Element, LevelKind, LevelVector, MultiPermutation, PermError};
pub use polyreal::{PolyError, RatPolynomial, RootInterval, RootIsolation};
pub use series::{Series1, Series2, SeriesError};
