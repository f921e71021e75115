//! Grid equilibrium certificates and exhaustive enumeration.
//!
//!     cargo run --release --example equilibria

use curation_game::equilibrium::{enumerate_equilibria, is_grid_equilibrium, CandidatePolicy, StrategyGrid, DEFAULT_CANDIDATE_CAP};
use curation_game::rational::{format_rational, ratio};
use curation_game::{Protocol, Scenario, SocialFunction, StrategyProfile};

fn main() -> curation_game::Result<()> {
    let protocol = Protocol::competitive();
    let check = StrategyGrid::new(10)?;
    let enumerate = StrategyGrid::new(4)?;
    for (name, w) in [("and-xor-center", ratio(1, 10)), ("parity", ratio(1, 10)), ("parity", ratio(3, 5))] {
        let scenario = Scenario::symmetric_linear(SocialFunction::builtin(name, 2)?, w.clone())?;
        println!("{name}, w = {}", format_rational(&w));
        for spec in ["1,0;1,0", "1/2,1/2;1/2,1/2"] {
            let cert = is_grid_equilibrium(&scenario, &StrategyProfile::parse(spec)?, &protocol, &check)?;
            let gains: Vec<String> = cert.gains.iter().map(format_rational).collect();
            println!("  {spec:<16} gains [{}] -> {}", gains.join(", "), cert.verdict);
        }
        let found = enumerate_equilibria(&scenario, &protocol, &enumerate, CandidatePolicy::Exhaustive, DEFAULT_CANDIDATE_CAP)?;
        let shown: Vec<String> = found.iter().take(4).map(|c| c.profile.to_string()).collect();
        println!("  {} grid equilibria on G=4, e.g. {}", found.len(), shown.join("  "));
    }
    Ok(())
}
