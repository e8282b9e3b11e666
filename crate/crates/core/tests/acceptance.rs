//! One line per acceptance criterion; fails if any criterion fails.

use std::io::Write;

use mucalc_core::acceptance::{CriterionResult, CRITERIA};

const SEED: u64 = 2024;

/// Writes past the test harness's output capture so the report always
/// shows up.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").expect("stdout is writable");
    out.flush().expect("stdout is writable");
}

#[test]
fn acceptance_suite() {
    let results: Vec<CriterionResult> = CRITERIA
        .iter()
        .map(|(_, criterion)| {
            let r = criterion(SEED);
            report(&r.to_string());
            r
        })
        .collect();
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    report(&format!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed.len(),
        results.len()
    ));
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
