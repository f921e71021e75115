//! The shipped scenario battery.
//!
//! Five two-agent social functions, each at linear price weights 1/10, 1/5
//! and 3/5 with unit profits. Together they cover every combination of
//! helpless / not helpless center and fanatic / non-fanatic agents.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{Scenario, SocialFunction};
use crate::rational::{ratio, Rational};

/// Seed of the random truth table in the battery.
pub const RANDOM_TABLE_SEED: u64 = 20_240_601;

/// `RANDOM_TABLE_SEED` expanded by [`random_table`] for two agents.
pub const RANDOM_TABLE: &str = "00110010";

pub const WEIGHTS: [(i64, i64); 3] = [(1, 10), (1, 5), (3, 5)];

/// A uniformly random truth table over `n_agents + 1` bits.
pub fn random_table(seed: u64, n_agents: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..1usize << (n_agents + 1))
        .map(|_| if rng.gen::<bool>() { '1' } else { '0' })
        .collect()
}

fn functions() -> Result<Vec<(&'static str, SocialFunction)>> {
    Ok(vec![
        ("parity3", SocialFunction::builtin("parity", 2)?),
        ("majority3", SocialFunction::builtin("majority", 2)?),
        ("dictator-center", SocialFunction::builtin("dictator:0", 2)?),
        ("and-xor-center", SocialFunction::builtin("and-xor-center", 2)?),
        ("random3", SocialFunction::from_table_str(2, RANDOM_TABLE)?),
    ])
}

fn weight_tag(w: &Rational) -> String {
    format!("w{}-{}", w.numer(), w.denom())
}

/// All battery scenarios, named `<function>-w<num>-<den>`.
pub fn battery() -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    for (name, g) in functions()? {
        for (num, den) in WEIGHTS {
            let w = ratio(num, den);
            let id = format!("{name}-{}", weight_tag(&w));
            out.push(Scenario::symmetric_linear(g.clone(), w)?.with_name(id));
        }
    }
    Ok(out)
}

/// Loads every `*.json` scenario in `dir`, sorted by file name.
pub fn load_dir(dir: impl AsRef<Path>) -> Result<Vec<Scenario>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(Scenario::load).collect()
}
