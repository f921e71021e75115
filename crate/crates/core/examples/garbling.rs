//! Adding channel noise to a protocol's replies never raises an agent's
//! expected profit.
//!
//!     cargo run --example garbling

use curation_game::inference::expected_profit;
use curation_game::rational::{format_rational, ratio};
use curation_game::{Protocol, Scenario, SocialFunction, StrategyProfile};

fn main() -> curation_game::Result<()> {
    let scenario = Scenario::symmetric_linear(SocialFunction::builtin("and-xor-center", 2)?, ratio(1, 10))?;
    let profile = StrategyProfile::parse("1,0;4/5,1/5")?;
    println!("profile {profile}, agent 1, base protocol fmax");
    for keep in [8, 7, 6, 5, 4] {
        let z = ratio(keep, 8);
        let protocol = Protocol::garble(Protocol::FMax, vec![z.clone(); 3])?;
        let v = expected_profit(&scenario, &profile, &protocol, 1)?;
        println!("  keep-probability {:>4}: V_1 = {}", format_rational(&z), format_rational(&v));
    }
    Ok(())
}
