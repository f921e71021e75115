//! Exact profit, price and utility of each agent at a few profiles, plus the
//! posterior an agent forms from one reply.
//!
//!     cargo run --example evaluate_profile

use curation_game::inference::{coordinate_posterior, expected_profit, utility};
use curation_game::model::price;
use curation_game::rational::{decimal, format_rational, ratio};
use curation_game::{Protocol, ReplyKernel, Scenario, SocialFunction, Strategy, StrategyProfile};

fn main() -> curation_game::Result<()> {
    let g = SocialFunction::builtin("and-xor-center", 2)?;
    let scenario = Scenario::symmetric_linear(g, ratio(1, 10))?;
    let protocol = Protocol::competitive();

    for spec in ["1,0;1,0", "1/2,1/2;1/2,1/2", "1,0;3/5,3/5", "9/10,1/10;1,0"] {
        let profile = StrategyProfile::parse(spec)?;
        println!("profile {profile}");
        for i in scenario.agents() {
            let v = expected_profit(&scenario, &profile, &protocol, i)?;
            let p = price(scenario.price_fn(i), profile.get(i));
            let u = utility(&scenario, &profile, &protocol, i)?;
            println!(
                "  agent {i}: V = {} ({}), price = {}, U = {} ({})",
                format_rational(&v),
                decimal(&v),
                format_rational(&p),
                format_rational(&u),
                decimal(&u)
            );
        }
    }

    let s = Strategy::new(ratio(4, 5), ratio(2, 5))?;
    let post = coordinate_posterior(&ReplyKernel::pass_through(), &s, 0)?;
    println!("P(b_k = 1 | f_k = 0) under {s}: {}", format_rational(&post));
    Ok(())
}
