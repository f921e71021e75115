//! Fanatic and helpless conditions against the equilibrium structure of the
//! competitive protocol, for every battery scenario.
//!
//!     cargo run --release --example uniqueness_report

use curation_game::battery::battery;
use curation_game::equilibrium::{check_uniqueness, CheckConfig};

fn main() -> curation_game::Result<()> {
    println!("{:<24} {:>8} {:>14} {:>9} {:>9} {:>6} {:>7}", "scenario", "helpless", "fanatic", "truthful", "zero-info", "other", "holds");
    for scenario in battery()? {
        let r = check_uniqueness(&scenario, &CheckConfig::default())?;
        println!(
            "{:<24} {:>8} {:>14} {:>9} {:>9} {:>6} {:>7}",
            r.scenario,
            r.helpless,
            format!("{:?}", r.fanatic),
            r.enumeration.all_truthful,
            r.enumeration.all_zero_information,
            r.enumeration.other,
            r.verdicts.all_hold()
        );
    }
    Ok(())
}
