//! The competitive and fair competitive protocols share their grid
//! equilibria; indicator ranking agrees too once deviations may undercut the
//! smallest candidate gap.
//!
//!     cargo run --release --example equivalence

use curation_game::battery::battery;
use curation_game::equilibrium::{check_equivalence, enumerate_equilibria_refined, CandidatePolicy, StrategyGrid, DEFAULT_CANDIDATE_CAP};
use curation_game::{Protocol, Ranking};

fn main() -> curation_game::Result<()> {
    let grid = StrategyGrid::new(4)?;
    let fine = StrategyGrid::new(8)?;
    for scenario in battery()? {
        let report = check_equivalence(&scenario, &grid, CandidatePolicy::Exhaustive, DEFAULT_CANDIDATE_CAP)?;
        let count = |p: Protocol| -> curation_game::Result<usize> {
            Ok(enumerate_equilibria_refined(&scenario, &p, &grid, &fine, CandidatePolicy::Exhaustive, DEFAULT_CANDIDATE_CAP)?.len())
        };
        println!(
            "{:<24} competitive {:>3}  fair {:>3}  identical {}  | refined: price-ranked {:>3}  indicator {:>3}",
            report.scenario,
            report.competitive.len(),
            report.fair_competitive.len(),
            report.identical,
            count(Protocol::competitive())?,
            count(Protocol::Competitive(Ranking::Indicator))?,
        );
    }
    Ok(())
}
