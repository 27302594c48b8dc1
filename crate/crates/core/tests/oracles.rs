//! Brute-force checks of the formulas and structural claims on small sizes.

use std::collections::BTreeMap;

use mdperm::enumerate::{self, Enumeration, EnumerationScope};
use mdperm::formulas;
use mdperm::patterns::{self, Pattern};
use mdperm::{LevelKind, MultiPermutation};
use num_bigint::BigUint;

const KINDS: [LevelKind; 2] = [LevelKind::MaxEntry, LevelKind::EntrySum];

fn all(d: usize, n: usize) -> Vec<MultiPermutation> {
    enumerate::iterate(&EnumerationScope::all(d, n)).unwrap()
}

#[test]
fn plateau_total_under_max_entry() {
    for (d, n) in [(2, 1), (2, 4), (3, 2), (3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (5, 4)] {
        let plateau = Pattern::plateau(d - 1);
        let brute =
            enumerate::oracle_total_pattern(&EnumerationScope::all(d, n), LevelKind::MaxEntry, &plateau).unwrap();
        assert_eq!(formulas::total_plateaux_levmax(d, n).unwrap(), brute, "(d,n) = ({d},{n})");
    }
    assert_eq!(formulas::total_plateaux_levmax(4, 4).unwrap(), BigUint::from(2688u32));
}

#[test]
fn plateau_total_domain() {
    assert!(formulas::total_plateaux_levmax(5, 3).is_err());
    assert!(formulas::total_plateaux_levmax(1, 3).is_err());
    // one stored row: every single column is a 1-plateau
    assert_eq!(formulas::total_plateaux_levmax(2, 5).unwrap(), BigUint::from(5u32 * 120));
}

#[test]
fn construction_reaches_the_lower_bound() {
    for d in 3..=6 {
        for n in 1..=7 {
            let p = formulas::construct_minimal(d, n).unwrap();
            assert_eq!(p.dimension(), d);
            assert_eq!(p.len(), n);
            assert!(formulas::is_minimal(&p), "(d,n) = ({d},{n}): {:?}", p.level_vector(LevelKind::EntrySum));
            assert!(formulas::is_maximal(&p.complement()), "(d,n) = ({d},{n})");
        }
    }
}

#[test]
fn y4_even_levels() {
    let y = formulas::construct_y4(4).unwrap();
    assert_eq!(y.level_vector(LevelKind::EntrySum).levels(), &[4, 4, 5, 5]);
}

#[test]
fn consecutive_length_two_patterns_are_the_statistics() {
    let c12 = Pattern::consecutive("12").unwrap();
    let c21 = Pattern::consecutive("21").unwrap();
    let c11 = Pattern::consecutive("11").unwrap();
    for p in all(4, 4) {
        for kind in KINDS {
            let lv = p.level_vector(kind);
            let s = patterns::stats(&lv);
            let l = lv.levels();
            assert_eq!(patterns::count_in_slice(l, &c12), s.ascents);
            assert_eq!(patterns::count_in_slice(l, &c21), s.descents);
            assert_eq!(patterns::count_in_slice(l, &c11), s.plateaux);
            assert_eq!(patterns::is_weakly_increasing(l), s.descents == 0);
        }
    }
}

#[test]
fn hoe_contains_the_top_column() {
    for (d, n) in [(3, 4), (4, 4), (5, 3)] {
        let top = vec![n as u32 - 1; d - 1];
        for p in all(d, n) {
            if patterns::is_hoe(p.level_vector(LevelKind::MaxEntry).levels()) {
                assert!(p.elements().any(|e| e.entries == top), "{p:?}");
            }
        }
    }
}

#[test]
fn odd_cases_minimal_means_complete_plateau() {
    for (d, n) in [(3, 3), (3, 5), (4, 3), (5, 3)] {
        let s = enumerate::oracle_level_sets(d, n, &[]).unwrap();
        let (m, m_star) = formulas::level_bounds(d, n);
        assert_eq!((s.m_min_observed, s.m_max_observed), (m, m_star));
        assert_eq!(m, m_star);
        assert_eq!(s.minimal, s.complete_plateau, "(d,n) = ({d},{n})");
        assert_eq!(s.minimal, s.maximal);
    }
}

#[test]
fn even_minimax_splits_columns_evenly() {
    for (d, n) in [(4, 2), (4, 4)] {
        let (m, m_star) = formulas::level_bounds(d, n);
        let minimax = Enumeration::new(EnumerationScope::all(d, n))
            .unwrap()
            .collect_where(|p| formulas::is_minimal(p) && formulas::is_maximal(p));
        assert!(!minimax.is_empty());
        for p in &minimax {
            let lv = p.level_vector(LevelKind::EntrySum);
            let at_m = lv.levels().iter().filter(|&&l| l == m).count();
            let at_star = lv.levels().iter().filter(|&&l| l == m_star).count();
            assert_eq!((at_m, at_star), (n / 2, n / 2), "{p:?}");
        }
    }
}

#[test]
fn complement_maps_minimal_onto_maximal() {
    for (d, n) in [(3, 4), (4, 3), (4, 4)] {
        let e = Enumeration::new(EnumerationScope::all(d, n)).unwrap();
        let mut minimal: Vec<_> = e.collect_where(formulas::is_minimal).iter().map(|p| p.complement()).collect();
        let mut maximal = e.collect_where(formulas::is_maximal);
        minimal.sort();
        maximal.sort();
        assert_eq!(minimal, maximal, "(d,n) = ({d},{n})");
    }
}

#[test]
fn partitioned_traversal_matches_sequential() {
    let scope = EnumerationScope::all(4, 4);
    let e = Enumeration::new(scope.clone()).unwrap();
    let mut sequential = Vec::new();
    e.for_each(|p| sequential.push(p.clone()));
    let mut partitioned = Vec::new();
    for part in e.partitions() {
        part.for_each(|p| partitioned.push(p.clone()));
    }
    assert_eq!(sequential, partitioned);
    let mut collected = enumerate::iterate(&scope).unwrap();
    collected.sort();
    sequential.sort();
    assert_eq!(collected, sequential);
    let parallel = e.count_where(|_| true);
    assert_eq!(parallel, BigUint::from(24u32).pow(3));
}

#[test]
fn distinct_elements_per_level() {
    for (d, n) in [(3, 4), (4, 3), (4, 4)] {
        let mult = enumerate::oracle_element_multiplicity(d, n).unwrap();
        let mut by_level: BTreeMap<usize, u32> = BTreeMap::new();
        for (col, count) in &mult {
            assert!(*count > BigUint::from(0u32));
            *by_level.entry(col.iter().map(|&v| v as usize).sum()).or_default() += 1;
        }
        for (level, distinct) in by_level {
            assert_eq!(formulas::e_level_count(d, n, level).unwrap(), BigUint::from(distinct), "level {level}");
        }
    }
}

#[test]
fn springer_and_unimodal_brute() {
    for n in 1..=5 {
        let scope = EnumerationScope::all(3, n);
        let weak = enumerate::oracle_count(&scope, LevelKind::MaxEntry, &"weakly-increasing".parse().unwrap()).unwrap();
        assert_eq!(weak, formulas::wi_value(n), "n={n}");
        let uni = enumerate::oracle_count(&scope, LevelKind::MaxEntry, &"unimodal".parse().unwrap()).unwrap();
        assert_eq!(uni, formulas::u_value(n), "n={n}");
    }
}

#[test]
fn r_distribution_row_sums() {
    for n in 0..=7 {
        let row = enumerate::r_distribution(n).unwrap();
        assert_eq!(row.iter().sum::<BigUint>(), formulas::factorial(n));
        assert_eq!(row, formulas::r_row(n), "n={n}");
    }
}

#[test]
fn c_bounded_counts_grow_to_everything() {
    let (d, n) = (3, 4);
    let c_max = ((d - 1) * (n - 1)) as u64 - formulas::level_bounds(d, n).0;
    let s = enumerate::oracle_level_sets(d, n, &(0..=c_max).collect::<Vec<_>>()).unwrap();
    for w in s.c_bounded.windows(2) {
        assert!(w[0].1 <= w[1].1);
    }
    assert_eq!(s.c_bounded.last().unwrap().1, s.total);
    assert!(s.minimax <= s.minimal.clone().min(s.maximal.clone()));
}
