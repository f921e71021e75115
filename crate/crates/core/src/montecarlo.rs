//! Literal, seeded execution of the game flow.
//!
//! Each trial draws bits, messages, replies and guesses exactly as the game
//! prescribes, so empirical profits can be compared with the exact engine.
//!
//! Randomness: trial `t` uses a ChaCha8 stream keyed by `seed` with stream id
//! `t`, so trials are independent of execution order. Within a trial the draw
//! order is fixed: bits `b_0..b_N`, messages `m_1..m_N`, then for each agent
//! her reply coordinates `0..N`, then (only on an exact tie) each agent's
//! guess coin. Every Bernoulli draw with probability `num/den` is an exact
//! uniform integer draw from `0..den` compared against `num`.

use std::collections::HashMap;
use std::io::Write;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{expected_profit, g_posterior, posterior_vector};
use crate::model::{message_prob, Scenario, StrategyProfile};
use crate::protocol::Protocol;
use crate::rational::{format_rational, half, serde_rational_vec, to_f64, Rational};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub profile: StrategyProfile,
    pub protocol: String,
    pub trials: u64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(scenario: Scenario, profile: StrategyProfile, protocol: impl Into<String>, trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        Ok(Self {
            scenario,
            profile,
            protocol: protocol.into(),
            trials,
            seed,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub b: Vec<u8>,
    pub m: Vec<u8>,
    /// `replies[i - 1]` is the reply vector sent to agent `i`.
    pub replies: Vec<Vec<u8>>,
    pub guesses: Vec<u8>,
    #[serde(with = "serde_rational_vec")]
    pub payoffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub scenario: String,
    pub protocol: String,
    pub profile: StrategyProfile,
    pub trials: u64,
    pub seed: u64,
    /// Exact empirical mean payoff per agent.
    #[serde(with = "serde_rational_vec")]
    pub empirical_means: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub exact_profits: Vec<Rational>,
    /// `empirical - exact`, as decimals.
    pub deltas: Vec<f64>,
    /// Standard error of the mean under the exact profit.
    pub std_errors: Vec<f64>,
    pub within_four_sigma: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

impl Transcript {
    /// One JSON object per trial, then a final `{"summary": ...}` line.
    pub fn write_jsonl(&self, mut out: impl Write) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &SummaryLine { summary: &self.summary })?;
        out.write_all(b"\n")?;
        Ok(())
    }

    /// One CSV row per trial; vectors are written as bit strings.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
        w.write_record(["trial", "b", "m", "replies", "guesses", "payoffs"])
            .map_err(csv_err)?;
        for r in &self.records {
            let replies: Vec<String> = r.replies.iter().map(|f| bits(f)).collect();
            let payoffs: Vec<String> = r.payoffs.iter().map(format_rational).collect();
            w.write_record([
                r.trial.to_string(),
                bits(&r.b),
                bits(&r.m),
                replies.join("|"),
                bits(&r.guesses),
                payoffs.join("|"),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// `(#{b_i = 0}, #{b_i = 0 and m_i = 0})` over all trials.
    pub fn message_counts(&self, agent: usize) -> (u64, u64) {
        let mut zeros = 0;
        let mut zero_msgs = 0;
        for r in &self.records {
            if r.b[agent] == 0 {
                zeros += 1;
                if r.m[agent] == 0 {
                    zero_msgs += 1;
                }
            }
        }
        (zeros, zero_msgs)
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Probability as an exact `num/den` pair of machine integers.
#[derive(Debug, Clone, Copy)]
struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    fn of(r: &Rational) -> Result<Self> {
        let num = r.numer().to_u64();
        let den = r.denom().to_u64();
        match (num, den) {
            (Some(num), Some(den)) => Ok(Self { num, den }),
            _ => Err(Error::Parameter(format!(
                "probability {} is too fine-grained to sample exactly",
                format_rational(r)
            ))),
        }
    }

    /// Draws 1 with probability `num/den`.
    fn draw(&self, rng: &mut ChaCha8Rng) -> bool {
        if self.num == 0 {
            return false;
        }
        if self.num == self.den {
            return true;
        }
        rng.gen_range(0..self.den) < self.num
    }
}

/// `sqrt((c·V - V²) / T)`: payoffs take values in `{0, c}` with mean `V`.
pub fn standard_error(profit_constant: &Rational, exact: &Rational, trials: u64) -> f64 {
    let var = to_f64(&(profit_constant * exact - exact * exact));
    (var.max(0.0) / trials as f64).sqrt()
}

/// `|empirical - exact| <= 4σ`, exact when `σ = 0`.
pub fn within_four_sigma(empirical: &Rational, exact: &Rational, sigma: f64) -> bool {
    if sigma == 0.0 {
        return empirical == exact;
    }
    (to_f64(empirical) - to_f64(exact)).abs() <= 4.0 * sigma
}

pub fn simulate(config: &RunConfig) -> Result<Transcript> {
    let scenario = &config.scenario;
    let profile = &config.profile;
    let protocol = Protocol::parse(&config.protocol)?;
    let n = scenario.n_agents();
    let len = n + 1;
    let plan = protocol.plan(scenario, profile)?;

    // P(m_k = 0 | b_k) for k = 1..N
    let msg: Vec<[Threshold; 2]> = scenario
        .agents()
        .map(|k| {
            let s = profile.get(k);
            Ok([Threshold::of(&message_prob(s, 0))?, Threshold::of(&message_prob(s, 1))?])
        })
        .collect::<Result<_>>()?;
    // P(f_{i,k} = 0 | m_k)
    let replies: Vec<Vec<[Threshold; 2]>> = scenario
        .agents()
        .map(|i| {
            plan.row(i)
                .iter()
                .map(|kernel| Ok([Threshold::of(kernel.prob_zero(0))?, Threshold::of(kernel.prob_zero(1))?]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // Posterior P(g = 1 | b_i, f) per agent, keyed by (b_i, reply index).
    // Impossible observations are simply absent.
    let mut posteriors: Vec<HashMap<(u8, usize), Rational>> = Vec::with_capacity(n);
    for i in scenario.agents() {
        let mut table = HashMap::new();
        for b_i in 0..2u8 {
            let m_i = if message_prob(profile.get(i), b_i).is_zero() { 1 } else { 0 };
            for f_index in 0..1usize << len {
                let f: Vec<u8> = (0..len).map(|k| ((f_index >> (len - 1 - k)) & 1) as u8).collect();
                if let Ok(v) = posterior_vector(scenario, profile, plan.row(i), i, b_i, m_i, &f) {
                    table.insert((b_i, f_index), g_posterior(scenario.g(), &v));
                }
            }
        }
        posteriors.push(table);
    }

    let mut base = ChaCha8Rng::seed_from_u64(config.seed);
    base.set_stream(0);
    let h = half();
    let records: Vec<TrialRecord> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = base.clone();
            rng.set_stream(trial);
            rng.set_word_pos(0);

            let b: Vec<u8> = (0..len).map(|_| rng.gen::<bool>() as u8).collect();
            let mut m = vec![b[0]];
            for k in 1..len {
                let zero = msg[k - 1][b[k] as usize].draw(&mut rng);
                m.push(if zero { 0 } else { 1 });
            }
            let replies: Vec<Vec<u8>> = (0..n)
                .map(|row| {
                    (0..len)
                        .map(|k| if replies[row][k][m[k] as usize].draw(&mut rng) { 0 } else { 1 })
                        .collect()
                })
                .collect();
            let truth = scenario.g().at_index(b.iter().fold(0usize, |acc, &x| (acc << 1) | x as usize));
            let mut guesses = Vec::with_capacity(n);
            let mut payoffs = Vec::with_capacity(n);
            for i in 1..=n {
                let f_index = replies[i - 1].iter().fold(0usize, |acc, &x| (acc << 1) | x as usize);
                let post = &posteriors[i - 1][&(b[i], f_index)];
                let guess = if *post > h {
                    true
                } else if *post < h {
                    false
                } else {
                    rng.gen::<bool>()
                };
                guesses.push(guess as u8);
                payoffs.push(if guess == truth {
                    scenario.profit(i).clone()
                } else {
                    Rational::zero()
                });
            }
            TrialRecord {
                trial,
                b,
                m,
                replies,
                guesses,
                payoffs,
            }
        })
        .collect();

    let trials = Rational::from_integer(config.trials.into());
    let mut empirical_means = Vec::with_capacity(n);
    let mut exact_profits = Vec::with_capacity(n);
    let mut deltas = Vec::with_capacity(n);
    let mut std_errors = Vec::with_capacity(n);
    let mut within = Vec::with_capacity(n);
    for i in scenario.agents() {
        let total: Rational = records.iter().map(|r| &r.payoffs[i - 1]).sum();
        let mean = total / &trials;
        let exact = expected_profit(scenario, profile, &protocol, i)?;
        let sigma = standard_error(scenario.profit(i), &exact, config.trials);
        deltas.push(to_f64(&mean) - to_f64(&exact));
        within.push(within_four_sigma(&mean, &exact, sigma));
        std_errors.push(sigma);
        empirical_means.push(mean);
        exact_profits.push(exact);
    }
    Ok(Transcript {
        records,
        summary: Summary {
            scenario: scenario.id(),
            protocol: protocol.name(),
            profile: profile.clone(),
            trials: config.trials,
            seed: config.seed,
            empirical_means,
            exact_profits,
            deltas,
            std_errors,
            within_four_sigma: within,
        },
    })
}
