//! Shape of the embedded corpus: enough entries for the acceptance gate,
//! names unique, every verdict within the supported singularity range.

use std::collections::BTreeSet;

use cli_io::corpus::{curve_entries, system_entries};

#[test]
fn corpus_is_large_enough() {
    let curves = curve_entries();
    assert!(curves.len() >= 14, "have {}", curves.len());
    assert!(curves.iter().filter(|e| e.crosscheck).count() >= 12);
    assert!(system_entries().len() >= 10);
}

#[test]
fn names_are_unique_and_match_k_range() {
    let curves = curve_entries();
    let names: BTreeSet<&str> = curves.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names.len(), curves.len());
    for e in &curves {
        assert!((2..=4).contains(&e.k), "{} has k = {}", e.name, e.k);
        assert!(!e.description.is_empty(), "{} lacks a description", e.name);
    }
    let systems = system_entries();
    let names: BTreeSet<&str> = systems.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names.len(), systems.len());
}

#[test]
fn flagged_entries_carry_a_case() {
    for e in curve_entries() {
        if e.crosscheck {
            assert!(e.degenerate_case.is_some(), "{} is flagged but has no case", e.name);
            assert!(e.stability.plain, "{} is flagged but not stable", e.name);
        }
    }
}
