//! Center protocols as per-coordinate reply kernels.
//!
//! A protocol maps the committed strategy profile to a [`ReplyPlan`]: for
//! each agent `i` and each coordinate `k` a 2×2 channel from the message
//! `m_k` to reply bit `f_{i,k}`. Coordinate `k` of a reply can only depend on
//! `m_k`; the representation makes that structural.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{relative_price, PriceFunction, Scenario, StrategyProfile};
use crate::rational::{format_rational, half, is_probability, parse_rational, serde_rational, Rational};

/// `a00 = P(f = 0 | m = 0)`, `a01 = P(f = 0 | m = 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReplyKernel {
    #[serde(with = "serde_rational")]
    a00: Rational,
    #[serde(with = "serde_rational")]
    a01: Rational,
}

impl ReplyKernel {
    pub fn new(a00: Rational, a01: Rational) -> Result<Self> {
        for a in [&a00, &a01] {
            if !is_probability(a) {
                return Err(Error::InvalidProbability(format_rational(a)));
            }
        }
        Ok(Self { a00, a01 })
    }

    /// Forwards the message unchanged.
    pub fn pass_through() -> Self {
        Self {
            a00: Rational::one(),
            a01: Rational::zero(),
        }
    }

    /// Ignores the message; the reply is a fair coin.
    pub fn uniform() -> Self {
        Self { a00: half(), a01: half() }
    }

    pub fn a00(&self) -> &Rational {
        &self.a00
    }

    pub fn a01(&self) -> &Rational {
        &self.a01
    }

    /// `P(f = 0 | m)`.
    pub fn prob_zero(&self, m: u8) -> &Rational {
        if m == 0 {
            &self.a00
        } else {
            &self.a01
        }
    }

    pub fn is_pass_through(&self) -> bool {
        self.a00.is_one() && self.a01.is_zero()
    }

    /// The reply carries no information about the message.
    pub fn is_constant(&self) -> bool {
        self.a00 == self.a01
    }

    /// Composes with a binary symmetric channel that keeps the bit with probability `z`.
    pub fn garbled(&self, z: &Rational) -> Self {
        let flip = Rational::one() - z;
        let through = |a: &Rational| z * a + &flip * (Rational::one() - a);
        Self {
            a00: through(&self.a00),
            a01: through(&self.a01),
        }
    }
}

/// `kernels[i - 1][k]` governs coordinate `k` of the reply sent to agent `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReplyPlan {
    kernels: Vec<Vec<ReplyKernel>>,
}

impl ReplyPlan {
    pub fn new(kernels: Vec<Vec<ReplyKernel>>) -> Result<Self> {
        let n = kernels.len();
        if let Some(row) = kernels.iter().find(|row| row.len() != n + 1) {
            return Err(Error::Dimension {
                expected: n + 1,
                got: row.len(),
            });
        }
        Ok(Self { kernels })
    }

    pub fn filled(n_agents: usize, kernel: ReplyKernel) -> Self {
        Self {
            kernels: vec![vec![kernel; n_agents + 1]; n_agents],
        }
    }

    pub fn all_pass_through(n_agents: usize) -> Self {
        Self::filled(n_agents, ReplyKernel::pass_through())
    }

    pub fn all_uniform(n_agents: usize) -> Self {
        Self::filled(n_agents, ReplyKernel::uniform())
    }

    pub fn n_agents(&self) -> usize {
        self.kernels.len()
    }

    /// Row of agent `agent` (1-based).
    pub fn row(&self, agent: usize) -> &[ReplyKernel] {
        &self.kernels[agent - 1]
    }

    pub fn kernel(&self, agent: usize, k: usize) -> &ReplyKernel {
        &self.kernels[agent - 1][k]
    }

    pub fn set_kernel(&mut self, agent: usize, k: usize, kernel: ReplyKernel) {
        self.kernels[agent - 1][k] = kernel;
    }

    pub fn set_row(&mut self, agent: usize, kernel: ReplyKernel) {
        for slot in &mut self.kernels[agent - 1] {
            *slot = kernel.clone();
        }
    }

    pub fn rows(&self) -> &[Vec<ReplyKernel>] {
        &self.kernels
    }

    pub fn row_is_pass_through(&self, agent: usize) -> bool {
        self.row(agent).iter().all(ReplyKernel::is_pass_through)
    }

    pub fn row_is_uniform(&self, agent: usize) -> bool {
        self.row(agent).iter().all(|k| *k == ReplyKernel::uniform())
    }
}

/// How the competitive protocols rank agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ranking {
    /// Each agent's own relative price.
    RelativePrice,
    /// The indicator price: 0 on zero-information strategies, 1 otherwise.
    Indicator,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Protocol {
    Competitive(Ranking),
    FairCompetitive(Ranking),
    FMax,
    FMin,
    /// Shares the center's bit iff the single agent is truthful.
    N1,
    Improve(Box<Protocol>),
    /// Per-coordinate keep-probabilities `z_0..z_N`, each in `[1/2, 1]`.
    Garble(Box<Protocol>, Vec<Rational>),
}

impl Protocol {
    pub const fn competitive() -> Self {
        Protocol::Competitive(Ranking::RelativePrice)
    }

    pub const fn fair_competitive() -> Self {
        Protocol::FairCompetitive(Ranking::RelativePrice)
    }

    /// The improvement of `base`: the center's bit goes to every agent not
    /// playing a zero-information strategy.
    pub fn improve(base: Protocol) -> Self {
        Protocol::Improve(Box::new(base))
    }

    /// Passes every reply coordinate `k` of `base` through a binary symmetric
    /// channel with keep-probability `noise[k]`.
    pub fn garble(base: Protocol, noise: Vec<Rational>) -> Result<Self> {
        let lo = half();
        for z in &noise {
            if *z < lo || *z > Rational::one() {
                return Err(Error::Parameter(format!(
                    "garbling parameter {} outside [1/2, 1]",
                    format_rational(z)
                )));
            }
        }
        Ok(Protocol::Garble(Box::new(base), noise))
    }

    /// The builtins that are defined for `n_agents`.
    pub fn builtins(n_agents: usize) -> Vec<Protocol> {
        if n_agents == 1 {
            vec![Protocol::N1, Protocol::FMax, Protocol::FMin]
        } else {
            vec![
                Protocol::competitive(),
                Protocol::fair_competitive(),
                Protocol::FMax,
                Protocol::FMin,
            ]
        }
    }

    pub fn name(&self) -> String {
        match self {
            Protocol::Competitive(Ranking::RelativePrice) => "competitive".into(),
            Protocol::Competitive(Ranking::Indicator) => "competitive-indicator".into(),
            Protocol::FairCompetitive(Ranking::RelativePrice) => "fair-competitive".into(),
            Protocol::FairCompetitive(Ranking::Indicator) => "fair-competitive-indicator".into(),
            Protocol::FMax => "fmax".into(),
            Protocol::FMin => "fmin".into(),
            Protocol::N1 => "n1".into(),
            Protocol::Improve(base) => format!("improve:{}", base.name()),
            Protocol::Garble(base, z) => {
                let zs: Vec<String> = z.iter().map(format_rational).collect();
                format!("garble:{}:{}", base.name(), zs.join(","))
            }
        }
    }

    /// Inverse of [`Protocol::name`].
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "competitive" => return Ok(Protocol::competitive()),
            "competitive-indicator" => return Ok(Protocol::Competitive(Ranking::Indicator)),
            "fair-competitive" => return Ok(Protocol::fair_competitive()),
            "fair-competitive-indicator" => return Ok(Protocol::FairCompetitive(Ranking::Indicator)),
            "fmax" => return Ok(Protocol::FMax),
            "fmin" => return Ok(Protocol::FMin),
            "n1" => return Ok(Protocol::N1),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("improve:") {
            return Ok(Protocol::improve(Protocol::parse(rest)?));
        }
        if let Some(rest) = name.strip_prefix("garble:") {
            let (base, noise) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::Config(format!("`{name}` needs the form garble:<name>:<z0,...,zN>")))?;
            let noise = noise
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            return Protocol::garble(Protocol::parse(base)?, noise);
        }
        Err(Error::Config(format!("unknown protocol `{name}`")))
    }

    /// The reply plan this protocol commits to at `profile`.
    pub fn plan(&self, scenario: &Scenario, profile: &StrategyProfile) -> Result<ReplyPlan> {
        let n = scenario.n_agents();
        if profile.n_agents() != n {
            return Err(Error::Dimension {
                expected: n,
                got: profile.n_agents(),
            });
        }
        match self {
            Protocol::Competitive(ranking) => competitive_protocol(scenario, profile, *ranking),
            Protocol::FairCompetitive(ranking) => fair_competitive_protocol(scenario, profile, *ranking),
            Protocol::FMax => Ok(f_max(n)),
            Protocol::FMin => Ok(f_min(n)),
            Protocol::N1 => n1_protocol(scenario, profile),
            Protocol::Improve(base) => {
                let mut plan = base.plan(scenario, profile)?;
                for agent in scenario.agents() {
                    if !profile.get(agent).is_zero_information() {
                        plan.set_kernel(agent, 0, ReplyKernel::pass_through());
                    }
                }
                Ok(plan)
            }
            Protocol::Garble(base, noise) => {
                if noise.len() != n + 1 {
                    return Err(Error::Dimension {
                        expected: n + 1,
                        got: noise.len(),
                    });
                }
                let mut plan = base.plan(scenario, profile)?;
                for row in &mut plan.kernels {
                    for (kernel, z) in row.iter_mut().zip(noise) {
                        *kernel = kernel.garbled(z);
                    }
                }
                Ok(plan)
            }
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn require_competitive_arity(name: &str, n_agents: usize) -> Result<()> {
    if n_agents < 2 {
        return Err(Error::UnsupportedArity {
            protocol: name.to_string(),
            n_agents,
            hint: "; use `n1` for a single agent",
        });
    }
    Ok(())
}

fn ranking_scores(scenario: &Scenario, profile: &StrategyProfile, ranking: Ranking) -> Result<Vec<Rational>> {
    scenario
        .agents()
        .map(|i| match ranking {
            Ranking::RelativePrice => relative_price(scenario.price_fn(i), profile.get(i)),
            Ranking::Indicator => relative_price(&PriceFunction::Indicator, profile.get(i)),
        })
        .collect()
}

/// Which of the three defining cases of the competitive protocol applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompetitiveCase {
    AllTruthful,
    /// Agent (1-based) with the strict maximum score.
    StrictWinner(usize),
    Tie,
}

pub fn competitive_case(scenario: &Scenario, profile: &StrategyProfile, ranking: Ranking) -> Result<CompetitiveCase> {
    if profile.is_all_truthful() {
        return Ok(CompetitiveCase::AllTruthful);
    }
    let scores = ranking_scores(scenario, profile, ranking)?;
    let top = scores.iter().max().expect("at least one agent");
    let leaders: Vec<usize> = (0..scores.len()).filter(|&j| scores[j] == *top).collect();
    Ok(match leaders.as_slice() {
        [only] => CompetitiveCase::StrictWinner(only + 1),
        _ => CompetitiveCase::Tie,
    })
}

/// Everyone gets `m` if all are truthful; otherwise only the strict leader in
/// relative price does, and a tie at the top leaves everyone with noise.
pub fn competitive_protocol(scenario: &Scenario, profile: &StrategyProfile, ranking: Ranking) -> Result<ReplyPlan> {
    let n = scenario.n_agents();
    require_competitive_arity("competitive", n)?;
    Ok(match competitive_case(scenario, profile, ranking)? {
        CompetitiveCase::AllTruthful => ReplyPlan::all_pass_through(n),
        CompetitiveCase::StrictWinner(winner) => {
            let mut plan = ReplyPlan::all_uniform(n);
            plan.set_row(winner, ReplyKernel::pass_through());
            plan
        }
        CompetitiveCase::Tie => ReplyPlan::all_uniform(n),
    })
}

/// Truthful agents always get `m`; among the rest only a strict leader gets
/// `m`, and only when she is not the sole non-truthful agent.
pub fn fair_competitive_protocol(
    scenario: &Scenario,
    profile: &StrategyProfile,
    ranking: Ranking,
) -> Result<ReplyPlan> {
    let n = scenario.n_agents();
    require_competitive_arity("fair-competitive", n)?;
    let scores = ranking_scores(scenario, profile, ranking)?;
    let mut plan = ReplyPlan::all_uniform(n);
    for i in scenario.agents() {
        let wins = if profile.get(i).is_truthful() {
            true
        } else {
            let rivals: Vec<&Rational> = scenario
                .agents()
                .filter(|&j| j != i && !profile.get(j).is_truthful())
                .map(|j| &scores[j - 1])
                .collect();
            !rivals.is_empty() && rivals.iter().all(|r| scores[i - 1] > **r)
        };
        if wins {
            plan.set_row(i, ReplyKernel::pass_through());
        }
    }
    Ok(plan)
}

pub fn f_max(n_agents: usize) -> ReplyPlan {
    ReplyPlan::all_pass_through(n_agents)
}

pub fn f_min(n_agents: usize) -> ReplyPlan {
    ReplyPlan::all_uniform(n_agents)
}

/// Single-agent protocol: the center's bit is shared iff the agent is truthful.
pub fn n1_protocol(scenario: &Scenario, profile: &StrategyProfile) -> Result<ReplyPlan> {
    let n = scenario.n_agents();
    if n != 1 {
        return Err(Error::UnsupportedArity {
            protocol: "n1".into(),
            n_agents: n,
            hint: "; it is defined for exactly one agent",
        });
    }
    let center = if profile.get(1).is_truthful() {
        ReplyKernel::pass_through()
    } else {
        ReplyKernel::uniform()
    };
    ReplyPlan::new(vec![vec![center, ReplyKernel::pass_through()]])
}
