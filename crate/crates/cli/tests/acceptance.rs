//! Runs every acceptance check and prints one pass/fail line per check.
//! Exits nonzero when any check fails.

use casimir_cli::verify::{run_checks, VerifyOptions};

fn main() {
    let outcomes = run_checks(&VerifyOptions::default());
    for outcome in &outcomes {
        println!("{}", outcome.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed} of {} criteria passed", outcomes.len());
    if passed != outcomes.len() {
        std::process::exit(1);
    }
}
