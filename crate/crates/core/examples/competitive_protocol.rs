//! Reply plans of the competitive and fair competitive protocols, and which
//! defining case fires, for a handful of profiles.
//!
//!     cargo run --example competitive_protocol

use curation_game::protocol::competitive_case;
use curation_game::rational::ratio;
use curation_game::{Protocol, Ranking, ReplyPlan, Scenario, SocialFunction, StrategyProfile};

fn show(plan: &ReplyPlan) -> String {
    plan.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|k| if k.is_pass_through() { "P" } else if k.is_constant() { "U" } else { "?" })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> curation_game::Result<()> {
    let scenario = Scenario::symmetric_linear(SocialFunction::builtin("majority", 2)?, ratio(1, 5))?;
    println!("rows per agent, coordinates 0..N: P = pass-through, U = uniform");
    for spec in ["1,0;1,0", "1,0;1/2,1/2", "9/10,1/10;3/5,1/5", "4/5,1/5;1/5,4/5", "1/2,1/2;1/2,1/2"] {
        let profile = StrategyProfile::parse(spec)?;
        let case = competitive_case(&scenario, &profile, Ranking::RelativePrice)?;
        let comp = Protocol::competitive().plan(&scenario, &profile)?;
        let fair = Protocol::fair_competitive().plan(&scenario, &profile)?;
        let improved = Protocol::improve(Protocol::FMin).plan(&scenario, &profile)?;
        println!(
            "{profile:<22} {case:<16} competitive {}  fair {}  improve:fmin {}",
            show(&comp),
            show(&fair),
            show(&improved),
            case = format!("{case:?}")
        );
    }
    Ok(())
}
