//! The acceptance matrix: every criterion runs at its stated tolerance
//! (exact integer identities throughout) and prints one pass/fail line.

use symrack::suite::{self, SuiteConfig};

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig::default();
    let results = suite::run_all(&cfg).expect("suite construction");
    let mut all_pass = true;
    for r in &results {
        println!("{}", r.line());
        all_pass &= r.pass;
    }
    assert!(all_pass, "acceptance criteria failed; see the lines above");
    assert_eq!(results.len(), 9);
}

#[test]
fn injected_boundary_corruption_is_detected() {
    let cfg = SuiteConfig { corrupt_boundary: true, ..SuiteConfig::default() };
    let instances = suite::instance_matrix(&cfg).unwrap();
    let r = suite::criterion_chain_complex(&instances, &cfg);
    assert!(!r.pass, "a sign-corrupted boundary must fail the identity");
    assert!(r.details.contains("degree 2"), "failure names the degree: {}", r.details);
}

#[test]
fn empty_instance_filter_is_an_error() {
    let cfg = SuiteConfig { rack_filter: Some("no-such-rack".into()), ..SuiteConfig::default() };
    assert!(suite::instance_matrix(&cfg).is_err());
}
