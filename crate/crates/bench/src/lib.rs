//! Workloads shared by the criterion benches.

use mdperm::enumerate::{Enumeration, EnumerationScope};
use mdperm::patterns;
use mdperm::{LevelKind, Pattern};

/// Sequential level-vector sweep over the canonical `(d,n)` space; returns
/// the number of weakly increasing level vectors so the work is observable.
pub fn sweep_sequential(d: usize, n: usize) -> u64 {
    let e = Enumeration::new(EnumerationScope::canonical(d, n)).expect("scope within guard");
    let mut levels = Vec::with_capacity(n);
    let mut hits = 0;
    e.for_each(|p| {
        p.fill_levels(LevelKind::MaxEntry, &mut levels);
        hits += patterns::is_weakly_increasing(&levels) as u64;
    });
    hits
}

/// Same sweep, partitioned across threads.
pub fn sweep_parallel(d: usize, n: usize) -> u64 {
    let e = Enumeration::new(EnumerationScope::canonical(d, n)).expect("scope within guard");
    e.fold(
        || (0u64, Vec::with_capacity(n)),
        |(hits, levels), p| {
            p.fill_levels(LevelKind::MaxEntry, levels);
            *hits += patterns::is_weakly_increasing(levels) as u64;
        },
        |a, b| (a.0 + b.0, Vec::new()),
    )
    .0
}

/// Deterministic pseudo-random level words for the pattern matcher.
pub fn level_words(count: usize, len: usize, alphabet: u64) -> Vec<Vec<u64>> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state % alphabet
                })
                .collect()
        })
        .collect()
}

pub fn total_occurrences(words: &[Vec<u64>], pattern: &Pattern) -> u64 {
    words.iter().map(|w| patterns::count_in_slice(w, pattern)).sum()
}
