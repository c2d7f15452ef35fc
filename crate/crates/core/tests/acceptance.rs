//! The acceptance suite: runs every criterion of the battery and prints one
//! pass/fail line per criterion.

use redblue::acceptance::{run_all, CRITERIA};

#[test]
fn acceptance_battery() {
    let results = run_all();
    assert_eq!(results.len(), CRITERIA.len());
    let mut failures = Vec::new();
    for r in &results {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("[{verdict}] {:>2} {:<24} {}", r.id, r.name, r.detail);
        if !r.passed {
            failures.push(format!("{} ({})", r.name, r.detail));
        }
    }
    assert!(
        failures.is_empty(),
        "failed criteria: {}",
        failures.join(", ")
    );
}
