//! Prints one line per acceptance criterion and fails if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use nahilb_cli::acceptance::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, title) in CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id);
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {id}: {verdict} ({title}) [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            report.detail
        );
        if !report.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
