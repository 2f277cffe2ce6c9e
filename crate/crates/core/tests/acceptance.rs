//! Acceptance criteria V1-V9 and P1. Each test prints one PASS/FAIL line
//! to stderr; failing instances go to the captured output.
//!
//! A criterion whose statement does not hold is reported FAIL; the
//! test then asserts that the failing instances are exactly the known ones
//! and that the corrected reading passes, so any other regression still
//! breaks the build.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;

use critid::critical::GammaCache;
use critid::verify::{self, VerificationSuiteResult};

fn cache() -> &'static GammaCache {
    static C: OnceLock<GammaCache> = OnceLock::new();
    C.get_or_init(GammaCache::new)
}

fn report(r: &VerificationSuiteResult) {
    // straight to stderr so the summary shows even when output is captured
    let _ = writeln!(std::io::stderr(), "{}  {}", r.summary(), r.claim);
    println!("{}  {}", r.summary(), r.claim);
    let failed = r.failures();
    for c in failed.iter().take(8) {
        println!("    {}: expected {}, computed {}", c.input, c.expected, c.computed);
    }
    if failed.len() > 8 {
        println!("    ... {} more", failed.len() - 8);
    }
    for c in r.errata.iter().filter(|c| !c.pass) {
        println!(
            "    errata {}: expected {}, computed {}",
            c.input, c.expected, c.computed
        );
    }
    for e in &r.budget_events {
        println!("    error: {e}");
    }
}

fn assert_green(r: &VerificationSuiteResult) {
    report(r);
    assert!(r.pass, "{} failed", r.suite);
}

/// The claim fails on exactly `known` inputs and nowhere else.
fn assert_known_red(r: &VerificationSuiteResult, known: &[&str]) {
    report(r);
    assert!(r.budget_events.is_empty());
    let failed: BTreeSet<&str> = r.failures().iter().map(|c| c.input.as_str()).collect();
    let known: BTreeSet<&str> = known.iter().copied().collect();
    assert_eq!(failed, known, "{}: unexpected failure set", r.suite);
    assert!(r.errata_pass(), "{}: corrected reading fails", r.suite);
}

#[test]
fn v1_gamma_le1() {
    let r = verify::v1_gamma_le1(7, cache());
    assert_eq!(r.cases.len(), 996);
    assert_green(&r);
}

#[test]
fn v2_f2_criticality() {
    let r = verify::v2_f2_criticality(cache());
    assert_eq!(r.cases.len(), 5);
    assert_green(&r);
}

#[test]
fn v3_forbidden_subgraphs() {
    let r = verify::v3_forb(7, cache());
    assert_eq!(r.cases.len(), 3);
    assert_green(&r);
}

#[test]
fn v4_main_classification() {
    let r = verify::v4_main_classification(7, cache());
    assert_eq!(r.cases.len(), 996);
    assert_green(&r);
}

#[test]
fn v5_i3_presentations() {
    let r = verify::v5_i3(4);
    assert!(!r.cases.is_empty());
    assert_green(&r);
}

#[test]
fn v6_minor_tables() {
    let r = verify::v6_minor_tables(4);
    report(&r);
    assert!(r.budget_events.is_empty());
    assert!(r.errata_pass(), "corrected tables fail");
    // the printed tables are wrong for these three families and right for K_{m,n}
    let bad: BTreeSet<String> = r
        .failures()
        .iter()
        .map(|c| c.input.split('(').next().unwrap().to_string())
        .collect();
    let want: BTreeSet<String> = ["Kmno", "KmJoinTn", "TnJoinKmKo"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(bad, want);
}

#[test]
fn v7_matching_family() {
    let r = verify::v7_matching(10, 8);
    assert_known_red(&r, &["critical K4-M1"]);
}

#[test]
fn v8_example_graph() {
    let r = verify::v8_example();
    assert_eq!(r.cases.len(), 5);
    assert_known_red(
        &r,
        &[
            "FxE~w f1 = det L[[1, 2, 3, 4, 5];[2, 3, 5, 6, 7]]",
            "FxE~w f2 = det L[[1, 2, 3, 5, 6];[2, 4, 5, 6, 7]]",
        ],
    );
}

#[test]
fn v9_g2_clauses() {
    let r = verify::v9_g2(9);
    assert_known_red(&r, &["K(2,2,1)", "K(5,2,1)"]);
}

#[test]
fn p1_properties() {
    let r = verify::p1_properties(7, 100, 1);
    assert_green(&r);
}
