//! Grid equilibrium certificates, enumeration and the fanatic / helpless
//! conditions.
//!
//! An equilibrium here is a certificate over a finite [`StrategyGrid`]: no
//! agent gains by deviating to any grid strategy. Utilities are exact, so a
//! certificate either holds exactly or names a refuting deviation.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{baseline_profit, center_bonus_profit, expected_profit_row};
use crate::model::{price, Scenario, Strategy, StrategyProfile};
use crate::protocol::{Protocol, ReplyKernel};
use crate::rational::{half, ratio, serde_rational, serde_rational_vec, Rational};

/// Default grid for single-profile checks.
pub const CHECK_GRID: u32 = 10;
/// Default grid for exhaustive profile enumeration.
pub const ENUMERATION_GRID: u32 = 4;
/// Largest candidate set [`enumerate_equilibria`] accepts by default.
pub const DEFAULT_CANDIDATE_CAP: u128 = 50_000;

/// `{(a/G, b/G) : 0 <= a, b <= G}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyGrid {
    denominator: u32,
}

impl StrategyGrid {
    pub fn new(denominator: u32) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Parameter("grid denominator must be positive".into()));
        }
        Ok(Self { denominator })
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn size(&self) -> usize {
        let side = self.denominator as usize + 1;
        side * side
    }

    /// All grid strategies in lexicographic `(p, q)` order.
    pub fn strategies(&self) -> Vec<Strategy> {
        let g = self.denominator as i64;
        let mut out = Vec::with_capacity(self.size());
        for a in 0..=g {
            for b in 0..=g {
                out.push(Strategy::new(ratio(a, g), ratio(b, g)).expect("grid point is a probability"));
            }
        }
        out
    }

    pub fn contains(&self, s: &Strategy) -> bool {
        let g = Rational::from_integer(self.denominator.into());
        (s.p() * &g).is_integer() && (s.q() * &g).is_integer()
    }

    /// Every profile of `n_agents` grid strategies.
    pub fn profiles(&self, n_agents: usize) -> Vec<StrategyProfile> {
        let strategies = self.strategies();
        let mut out = vec![Vec::<Strategy>::new()];
        for _ in 0..n_agents {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    strategies.iter().map(move |s| {
                        let mut next = prefix.clone();
                        next.push(s.clone());
                        next
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|v| StrategyProfile::new(v).expect("non-empty"))
            .collect()
    }

    pub fn profile_count(&self, n_agents: usize) -> u128 {
        (self.size() as u128).pow(n_agents as u32)
    }
}

/// What an agent's profit depends on: her reply row, and the strategy of
/// every agent whose reply coordinate is informative.
type ProfitKey = (usize, Vec<(ReplyKernel, Option<Strategy>)>);

/// Memoising utility evaluator for one scenario.
///
/// Many profiles share the same reply row for an agent (most rows are all
/// pass-through or all uniform), so profits are cached on the inputs they
/// actually depend on.
pub struct Evaluator<'a> {
    scenario: &'a Scenario,
    cache: HashMap<ProfitKey, Rational>,
}

impl<'a> Evaluator<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Self {
            scenario,
            cache: HashMap::new(),
        }
    }

    pub fn scenario(&self) -> &'a Scenario {
        self.scenario
    }

    fn profit_for_row(&mut self, profile: &StrategyProfile, row: &[ReplyKernel], i: usize) -> Result<Rational> {
        let key_coords = row
            .iter()
            .enumerate()
            .map(|(k, kernel)| {
                if k == i || kernel.is_constant() {
                    (ReplyKernel::uniform(), None)
                } else {
                    (kernel.clone(), (k > 0).then(|| profile.get(k).clone()))
                }
            })
            .collect();
        let key = (i, key_coords);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = expected_profit_row(self.scenario, profile, row, i)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    pub fn expected_profit(&mut self, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
        let plan = protocol.plan(self.scenario, profile)?;
        self.profit_for_row(profile, plan.row(i), i)
    }

    pub fn utility(&mut self, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
        let v = self.expected_profit(profile, protocol, i)?;
        Ok(v - price(self.scenario.price_fn(i), profile.get(i)))
    }

    /// Best grid deviation of agent `i` and its gain over staying put.
    ///
    /// Ties in the gain go to the smallest `(q, p)`, so among equally good
    /// deviations `(1/10, 0)` is preferred to `(0, 1/10)`.
    pub fn best_response_gain(
        &mut self,
        profile: &StrategyProfile,
        protocol: &Protocol,
        i: usize,
        grid: &StrategyGrid,
    ) -> Result<(Rational, Strategy)> {
        let current = self.utility(profile, protocol, i)?;
        let mut best: Option<(Rational, Strategy)> = None;
        for s in deviation_order(grid) {
            let u = self.utility(&profile.with(i, s.clone()), protocol, i)?;
            let gain = u - &current;
            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                best = Some((gain, s));
            }
        }
        Ok(best.expect("grids are non-empty"))
    }

    /// True as soon as some agent has a deviation gaining more than `slack`.
    pub fn is_refuted(&mut self, profile: &StrategyProfile, protocol: &Protocol, grid: &StrategyGrid, slack: &Rational) -> Result<bool> {
        let strategies = grid.strategies();
        for i in self.scenario.agents() {
            let threshold = self.utility(profile, protocol, i)? + slack;
            for s in &strategies {
                if self.utility(&profile.with(i, s.clone()), protocol, i)? > threshold {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn certificate(
        &mut self,
        profile: &StrategyProfile,
        protocol: &Protocol,
        grid: &StrategyGrid,
        slack: &Rational,
    ) -> Result<EquilibriumCertificate> {
        let mut gains = Vec::new();
        let mut deviations = Vec::new();
        for i in self.scenario.agents() {
            let (gain, s) = self.best_response_gain(profile, protocol, i, grid)?;
            gains.push(gain);
            deviations.push(s);
        }
        let worst = (0..gains.len())
            .filter(|&j| gains[j] > *slack)
            .max_by(|&a, &b| gains[a].cmp(&gains[b]).then(b.cmp(&a)));
        let verdict = match worst {
            None => Verdict::GridEquilibrium,
            Some(j) => Verdict::RefutedBy {
                agent: j + 1,
                deviation: deviations[j].clone(),
            },
        };
        Ok(EquilibriumCertificate {
            profile: profile.clone(),
            protocol: protocol.name(),
            grid: *grid,
            gains,
            deviations,
            slack: slack.clone(),
            verdict,
        })
    }
}

fn deviation_order(grid: &StrategyGrid) -> Vec<Strategy> {
    let mut strategies = grid.strategies();
    strategies.sort_by(|a, b| (a.q(), a.p()).cmp(&(b.q(), b.p())));
    strategies
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    GridEquilibrium,
    /// The agent with the largest positive gain and her best deviation.
    RefutedBy { agent: usize, deviation: Strategy },
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::GridEquilibrium => f.write_str("grid-equilibrium"),
            Verdict::RefutedBy { agent, deviation } => write!(f, "refuted-by:{agent}:{deviation}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumCertificate {
    pub profile: StrategyProfile,
    pub protocol: String,
    pub grid: StrategyGrid,
    /// Largest deviation gain per agent over the grid.
    #[serde(with = "serde_rational_vec")]
    pub gains: Vec<Rational>,
    /// A deviation attaining each gain.
    pub deviations: Vec<Strategy>,
    #[serde(with = "serde_rational")]
    pub slack: Rational,
    pub verdict: Verdict,
}

impl EquilibriumCertificate {
    pub fn is_equilibrium(&self) -> bool {
        self.verdict == Verdict::GridEquilibrium
    }

    pub fn class(&self) -> ProfileClass {
        ProfileClass::of(&self.profile)
    }
}

pub fn best_response_gain(
    scenario: &Scenario,
    profile: &StrategyProfile,
    protocol: &Protocol,
    i: usize,
    grid: &StrategyGrid,
) -> Result<(Rational, Strategy)> {
    Evaluator::new(scenario).best_response_gain(profile, protocol, i, grid)
}

pub fn is_grid_equilibrium(
    scenario: &Scenario,
    profile: &StrategyProfile,
    protocol: &Protocol,
    grid: &StrategyGrid,
) -> Result<EquilibriumCertificate> {
    is_grid_equilibrium_with_slack(scenario, profile, protocol, grid, &Rational::zero())
}

/// As [`is_grid_equilibrium`], tolerating gains up to a nonnegative `slack`.
pub fn is_grid_equilibrium_with_slack(
    scenario: &Scenario,
    profile: &StrategyProfile,
    protocol: &Protocol,
    grid: &StrategyGrid,
    slack: &Rational,
) -> Result<EquilibriumCertificate> {
    if *slack < Rational::zero() {
        return Err(Error::Parameter("slack must be nonnegative".into()));
    }
    Evaluator::new(scenario).certificate(profile, protocol, grid, slack)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileClass {
    AllTruthful,
    AllZeroInformation,
    Other,
}

impl ProfileClass {
    pub fn of(profile: &StrategyProfile) -> Self {
        if profile.is_all_truthful() {
            ProfileClass::AllTruthful
        } else if profile.is_all_zero_information() {
            ProfileClass::AllZeroInformation
        } else {
            ProfileClass::Other
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidatePolicy {
    /// Every profile of grid strategies.
    Exhaustive,
    /// All-truthful, the `(1/2, 1/2)` zero-information representative, and
    /// every profile on the half-step subgrid.
    Structured,
}

pub fn candidates(n_agents: usize, grid: &StrategyGrid, policy: CandidatePolicy, cap: u128) -> Result<Vec<StrategyProfile>> {
    match policy {
        CandidatePolicy::Exhaustive => {
            let count = grid.profile_count(n_agents);
            if count > cap {
                return Err(Error::Budget { candidates: count, cap });
            }
            Ok(grid.profiles(n_agents))
        }
        CandidatePolicy::Structured => {
            let coarse = StrategyGrid::new(2)?;
            let count = coarse.profile_count(n_agents) + 2;
            if count > cap {
                return Err(Error::Budget { candidates: count, cap });
            }
            let mut set: BTreeSet<StrategyProfile> = coarse.profiles(n_agents).into_iter().collect();
            set.insert(StrategyProfile::all_truthful(n_agents));
            set.insert(StrategyProfile::uniform(n_agents, Strategy::zero_information(half())?));
            Ok(set.into_iter().collect())
        }
    }
}

/// Certificates for every candidate profile that is a grid equilibrium, in
/// candidate order.
pub fn enumerate_equilibria(
    scenario: &Scenario,
    protocol: &Protocol,
    grid: &StrategyGrid,
    policy: CandidatePolicy,
    cap: u128,
) -> Result<Vec<EquilibriumCertificate>> {
    enumerate_equilibria_refined(scenario, protocol, grid, grid, policy, cap)
}

/// Enumeration with candidates drawn from `candidate_grid` and deviations
/// from a separate `deviation_grid`.
///
/// A candidate agent sitting at the smallest positive gap `1/G` cannot
/// undercut herself on the same grid; a deviation grid that refines the
/// candidate grid restores that move.
pub fn enumerate_equilibria_refined(
    scenario: &Scenario,
    protocol: &Protocol,
    candidate_grid: &StrategyGrid,
    grid: &StrategyGrid,
    policy: CandidatePolicy,
    cap: u128,
) -> Result<Vec<EquilibriumCertificate>> {
    let candidates = candidates(scenario.n_agents(), candidate_grid, policy, cap)?;
    let zero = Rational::zero();
    let found: Vec<Option<EquilibriumCertificate>> = candidates
        .par_iter()
        .map_init(
            || Evaluator::new(scenario),
            |ev, profile| -> Result<Option<EquilibriumCertificate>> {
                if ev.is_refuted(profile, protocol, grid, &zero)? {
                    return Ok(None);
                }
                ev.certificate(profile, protocol, grid, &zero).map(Some)
            },
        )
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// `price_i(s^t) > c_i - baseline_i`.
///
/// Full information under the all-pass-through protocol is worth exactly
/// `c_i`, and the all-uniform protocol is worth the baseline at every
/// profile, so the quantifier over profiles disappears.
pub fn is_fanatic(scenario: &Scenario, i: usize) -> Result<bool> {
    let truthful_price = price(scenario.price_fn(i), &Strategy::truthful());
    Ok(truthful_price > scenario.profit(i) - baseline_profit(scenario, i)?)
}

/// The fanatic condition evaluated literally: the all-pass-through value at
/// the truthful profile against the all-uniform value at every grid profile.
pub fn is_fanatic_by_search(scenario: &Scenario, i: usize, grid: &StrategyGrid, cap: u128) -> Result<bool> {
    let n = scenario.n_agents();
    let count = grid.profile_count(n);
    if count > cap {
        return Err(Error::Budget { candidates: count, cap });
    }
    let mut ev = Evaluator::new(scenario);
    let full = ev.expected_profit(&StrategyProfile::all_truthful(n), &Protocol::FMax, i)?;
    let truthful_price = price(scenario.price_fn(i), &Strategy::truthful());
    for profile in grid.profiles(n) {
        let none = ev.expected_profit(&profile, &Protocol::FMin, i)?;
        if truthful_price <= &full - none {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The center is helpless iff her bit never improves any agent's best guess
/// beyond what the agent's own bit gives.
///
/// Facing zero-information opponents, the most any protocol can add for a
/// deviating agent is `b_0`, and deviations can be made arbitrarily cheap, so
/// the condition reduces to `center_bonus_i == baseline_i` for all agents.
pub fn is_helpless(scenario: &Scenario) -> Result<bool> {
    for i in scenario.agents() {
        if center_bonus_profit(scenario, i)? != baseline_profit(scenario, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Deviation grid for the truthful and zero-information certificates.
    pub check_grid: StrategyGrid,
    /// Candidate and deviation grid for enumeration.
    pub enumeration_grid: StrategyGrid,
    /// `None` picks exhaustive when it fits under `cap`, else structured.
    pub policy: Option<CandidatePolicy>,
    pub cap: u128,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            check_grid: StrategyGrid { denominator: CHECK_GRID },
            enumeration_grid: StrategyGrid {
                denominator: ENUMERATION_GRID,
            },
            policy: None,
            cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

impl CheckConfig {
    pub fn resolved_policy(&self, n_agents: usize) -> CandidatePolicy {
        self.policy.unwrap_or({
            if self.enumeration_grid.profile_count(n_agents) <= self.cap {
                CandidatePolicy::Exhaustive
            } else {
                CandidatePolicy::Structured
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub protocol: String,
    pub grid: StrategyGrid,
    pub policy: CandidatePolicy,
    pub equilibria: Vec<StrategyProfile>,
    pub all_truthful: usize,
    pub all_zero_information: usize,
    pub other: usize,
}

impl EnumerationSummary {
    fn from_certificates(protocol: &Protocol, grid: StrategyGrid, policy: CandidatePolicy, certs: &[EquilibriumCertificate]) -> Self {
        let count = |c: ProfileClass| certs.iter().filter(|x| x.class() == c).count();
        Self {
            protocol: protocol.name(),
            grid,
            policy,
            equilibria: certs.iter().map(|c| c.profile.clone()).collect(),
            all_truthful: count(ProfileClass::AllTruthful),
            all_zero_information: count(ProfileClass::AllZeroInformation),
            other: count(ProfileClass::Other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyVerdicts {
    /// Truthful is a grid equilibrium exactly when no agent is fanatic.
    pub truthful_iff_no_fanatic: bool,
    /// The zero-information profile is a grid equilibrium exactly when the center is helpless.
    pub zero_information_iff_helpless: bool,
    /// Every enumerated equilibrium is all-truthful or all-zero-information.
    pub only_two_classes: bool,
    /// Truthful is the unique enumerated equilibrium exactly when the center
    /// is not helpless and no agent is fanatic.
    pub unique_truthful_iff_conditions: bool,
}

impl ConsistencyVerdicts {
    pub fn all_hold(&self) -> bool {
        self.truthful_iff_no_fanatic
            && self.zero_information_iff_helpless
            && self.only_two_classes
            && self.unique_truthful_iff_conditions
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub scenario: String,
    pub fanatic: Vec<bool>,
    pub helpless: bool,
    pub truthful: EquilibriumCertificate,
    pub zero_information: EquilibriumCertificate,
    pub enumeration: EnumerationSummary,
    /// Truthful is the only enumerated equilibrium.
    pub unique_truthful: bool,
    pub verdicts: ConsistencyVerdicts,
}

/// Competitive-protocol equilibrium structure of a scenario together with the
/// consistency of the existence, uniqueness and classification statements.
pub fn check_uniqueness(scenario: &Scenario, config: &CheckConfig) -> Result<UniquenessReport> {
    let n = scenario.n_agents();
    let protocol = Protocol::competitive();
    let fanatic = scenario
        .agents()
        .map(|i| is_fanatic(scenario, i))
        .collect::<Result<Vec<_>>>()?;
    let helpless = is_helpless(scenario)?;
    let mut ev = Evaluator::new(scenario);
    let zero = Rational::zero();
    let truthful = ev.certificate(&StrategyProfile::all_truthful(n), &protocol, &config.check_grid, &zero)?;
    let zero_information = ev.certificate(
        &StrategyProfile::uniform(n, Strategy::zero_information(half())?),
        &protocol,
        &config.check_grid,
        &zero,
    )?;
    let policy = config.resolved_policy(n);
    let certs = enumerate_equilibria(scenario, &protocol, &config.enumeration_grid, policy, config.cap)?;
    let enumeration = EnumerationSummary::from_certificates(&protocol, config.enumeration_grid, policy, &certs);

    let any_fanatic = fanatic.iter().any(|&f| f);
    let unique_truthful = enumeration.equilibria.len() == 1 && enumeration.all_truthful == 1;
    let verdicts = ConsistencyVerdicts {
        truthful_iff_no_fanatic: truthful.is_equilibrium() == !any_fanatic,
        zero_information_iff_helpless: zero_information.is_equilibrium() == helpless,
        only_two_classes: enumeration.other == 0,
        unique_truthful_iff_conditions: unique_truthful == (!helpless && !any_fanatic),
    };
    Ok(UniquenessReport {
        scenario: scenario.id(),
        fanatic,
        helpless,
        truthful,
        zero_information,
        enumeration,
        unique_truthful,
        verdicts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub scenario: String,
    pub grid: StrategyGrid,
    pub policy: CandidatePolicy,
    pub competitive: Vec<StrategyProfile>,
    pub fair_competitive: Vec<StrategyProfile>,
    pub only_competitive: Vec<StrategyProfile>,
    pub only_fair_competitive: Vec<StrategyProfile>,
    pub identical: bool,
}

/// Compares the grid equilibrium sets of two protocols.
pub fn compare_equilibrium_sets(
    scenario: &Scenario,
    left: &Protocol,
    right: &Protocol,
    grid: &StrategyGrid,
    policy: CandidatePolicy,
    cap: u128,
) -> Result<(Vec<StrategyProfile>, Vec<StrategyProfile>)> {
    let profiles = |p: &Protocol| -> Result<Vec<StrategyProfile>> {
        Ok(enumerate_equilibria(scenario, p, grid, policy, cap)?
            .into_iter()
            .map(|c| c.profile)
            .collect())
    };
    Ok((profiles(left)?, profiles(right)?))
}

/// Competitive and fair competitive protocols have the same grid equilibria.
pub fn check_equivalence(scenario: &Scenario, grid: &StrategyGrid, policy: CandidatePolicy, cap: u128) -> Result<EquivalenceReport> {
    let (competitive, fair_competitive) = compare_equilibrium_sets(
        scenario,
        &Protocol::competitive(),
        &Protocol::fair_competitive(),
        grid,
        policy,
        cap,
    )?;
    let left: BTreeSet<_> = competitive.iter().cloned().collect();
    let right: BTreeSet<_> = fair_competitive.iter().cloned().collect();
    let only_competitive: Vec<_> = left.difference(&right).cloned().collect();
    let only_fair_competitive: Vec<_> = right.difference(&left).cloned().collect();
    let identical = only_competitive.is_empty() && only_fair_competitive.is_empty();
    Ok(EquivalenceReport {
        scenario: scenario.id(),
        grid: *grid,
        policy,
        competitive,
        fair_competitive,
        only_competitive,
        only_fair_competitive,
        identical,
    })
}
