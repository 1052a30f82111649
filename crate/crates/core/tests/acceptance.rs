//! Acceptance gate: runs every criterion of the self-test suite and prints
//! one pass/fail line per criterion.

use xturan_core::selftest;

#[test]
fn acceptance_criteria() {
    let results = selftest::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.name).collect();
    assert!(
        failed.is_empty(),
        "acceptance criteria failed: {}",
        failed.join(", ")
    );
}
