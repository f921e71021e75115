//! Plays the game literally with a seeded random source and compares the
//! empirical profits with the exact ones.
//!
//!     cargo run --release --example simulate

use curation_game::montecarlo::{simulate, RunConfig};
use curation_game::rational::{decimal, ratio};
use curation_game::{Scenario, SocialFunction, StrategyProfile};

fn main() -> curation_game::Result<()> {
    let scenario = Scenario::symmetric_linear(SocialFunction::builtin("majority", 2)?, ratio(1, 5))?;
    for (spec, protocol) in [("1/2,1/2;1/2,1/2", "fmin"), ("1,0;1,0", "fmax"), ("4/5,2/5;1,0", "competitive")] {
        let config = RunConfig::new(scenario.clone(), StrategyProfile::parse(spec)?, protocol, 100_000, 7)?;
        let t = simulate(&config)?;
        for i in 0..scenario.n_agents() {
            let s = &t.summary;
            println!(
                "{protocol:<12} {spec:<16} agent {}: empirical {} exact {} sigma {:.5} within 4 sigma: {}",
                i + 1,
                decimal(&s.empirical_means[i]),
                decimal(&s.exact_profits[i]),
                s.std_errors[i],
                s.within_four_sigma[i]
            );
        }
    }
    Ok(())
}
