//! Runs every exact check and prints a one-line summary per suite.

use levy_search::oracles::{run_suite, Suite, SuiteOptions};

fn main() -> levy_search::Result<()> {
    let report = run_suite(Suite::All, &SuiteOptions::default())?;
    for s in &report.suites {
        println!("{:<14} {}", s.name, if s.passed { "ok" } else { "FAILED" });
    }
    println!("overall: {}", if report.passed { "ok" } else { "FAILED" });
    Ok(())
}
