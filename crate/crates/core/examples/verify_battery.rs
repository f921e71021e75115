//! Runs every invariant suite over the shipped scenario battery and prints a
//! one-line tally per suite.
//!
//!     cargo run --release --example verify_battery

use curation_game::battery::battery;
use curation_game::verify::{run_suites, SUITES};

fn main() -> curation_game::Result<()> {
    let scenarios = battery()?;
    let results = run_suites(&SUITES, &scenarios)?;
    for suite in SUITES {
        let mine: Vec<_> = results.iter().filter(|r| r.suite == suite).collect();
        let cases: u64 = mine.iter().flat_map(|r| &r.assertions).map(|a| a.cases).sum();
        let failed: Vec<&str> = mine.iter().filter(|r| !r.passed()).map(|r| r.scenario.as_str()).collect();
        println!("{suite:<26} {cases:>7} cases  failures: {failed:?}");
    }
    Ok(())
}
