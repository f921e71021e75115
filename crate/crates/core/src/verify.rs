//! Invariant suites run over a set of scenarios.
//!
//! Every suite checks one family of statements about the game on one
//! scenario and reports each statement as an [`Assertion`]. A failing
//! assertion carries the first input that refutes it.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equilibrium::{
    check_equivalence, check_uniqueness, enumerate_equilibria, enumerate_equilibria_refined,
    is_fanatic, is_fanatic_by_search, is_helpless, CheckConfig, Evaluator, ProfileClass, StrategyGrid, CHECK_GRID,
    DEFAULT_CANDIDATE_CAP, ENUMERATION_GRID,
};
use crate::error::{Error, Result};
use crate::inference::{baseline_profit, expected_profit, expected_profit_by_guess, expected_profit_naive};
use crate::model::{Scenario, Strategy, StrategyProfile};
use crate::montecarlo::{simulate, RunConfig};
use crate::protocol::{Protocol, Ranking};
use crate::rational::{format_rational, half, ratio, Rational};

pub const SUITES: [&str; 13] = [
    "profit-identity",
    "garbling",
    "better-than-nothing",
    "improvement",
    "helpless-zero-info",
    "fanatic",
    "two-classes",
    "zero-info-deviation",
    "representative-invariance",
    "uniqueness",
    "equivalence",
    "indicator",
    "monte-carlo",
];

/// Seed for the sampled garbling cases.
pub const GARBLING_SEED: u64 = 0x6a72_626c;
pub const GARBLING_CASES: usize = 40;
/// Seed and trial count of the simulation suite.
pub const SIMULATION_SEED: u64 = 2024;
pub const SIMULATION_TRIALS: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    /// Number of cases checked.
    pub cases: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub scenario: String,
    pub assertions: Vec<Assertion>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// `"all"` expands to every suite.
pub fn resolve_suites(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == name)
        .map(|s| vec![*s])
        .ok_or_else(|| Error::Config(format!("unknown suite `{name}`; expected one of: all, {}", SUITES.join(", "))))
}

/// Runs every suite on every scenario in parallel; results come back ordered
/// by suite, then scenario.
pub fn run_suites(suites: &[&str], scenarios: &[Scenario]) -> Result<Vec<SuiteResult>> {
    let jobs: Vec<(&str, &Scenario)> = suites
        .iter()
        .flat_map(|s| scenarios.iter().map(move |sc| (*s, sc)))
        .collect();
    jobs.par_iter().map(|(suite, sc)| run_suite(suite, sc)).collect()
}

pub fn run_suite(suite: &str, scenario: &Scenario) -> Result<SuiteResult> {
    let assertions = match suite {
        "profit-identity" => profit_identity(scenario)?,
        "garbling" => garbling(scenario)?,
        "better-than-nothing" => better_than_nothing(scenario)?,
        "improvement" => improvement(scenario)?,
        "helpless-zero-info" => helpless_zero_info(scenario)?,
        "fanatic" => fanatic(scenario)?,
        "two-classes" => two_classes(scenario)?,
        "zero-info-deviation" => zero_info_deviation(scenario)?,
        "representative-invariance" => representative_invariance(scenario)?,
        "uniqueness" => uniqueness(scenario)?,
        "equivalence" => equivalence(scenario)?,
        "indicator" => indicator(scenario)?,
        "monte-carlo" => monte_carlo(scenario)?,
        other => return Err(Error::Config(format!("unknown suite `{other}`"))),
    };
    Ok(SuiteResult {
        suite: suite.to_string(),
        scenario: scenario.id(),
        assertions,
    })
}

/// Collects cases for one assertion, keeping the first failure.
struct Tally {
    name: &'static str,
    cases: u64,
    counterexample: Option<Value>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> Assertion {
        Assertion {
            name: self.name.to_string(),
            passed: self.counterexample.is_none(),
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn single(name: &'static str, ok: bool, witness: impl FnOnce() -> Value) -> Assertion {
    let mut t = Tally::new(name);
    t.check(ok, witness);
    t.finish()
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

fn grid(g: u32) -> StrategyGrid {
    StrategyGrid::new(g).expect("positive grid")
}

/// Profiles for per-profile checks; coarser for larger games.
fn sample_profiles(n: usize, dense: u32) -> Vec<StrategyProfile> {
    let g = if n <= 2 { dense } else { 2 };
    grid(g).profiles(n)
}

fn profit_identity(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let mut naive = Tally::new("factorized-equals-joint-enumeration");
    let mut by_guess = Tally::new("max-posterior-equals-guess-rule");
    let mut bounded = Tally::new("profit-between-zero-and-c");
    for profile in sample_profiles(n, 2) {
        for protocol in Protocol::builtins(n) {
            for i in sc.agents() {
                let fast = expected_profit(sc, &profile, &protocol, i)?;
                let slow = expected_profit_naive(sc, &profile, &protocol, i)?;
                let guess = expected_profit_by_guess(sc, &profile, &protocol, i)?;
                let w = || json!({"profile": profile, "protocol": protocol.name(), "agent": i, "factorized": r(&fast), "joint": r(&slow), "guess_rule": r(&guess)});
                naive.check(fast == slow, w);
                by_guess.check(slow == guess, w);
                bounded.check(!fast.is_zero() && fast <= *sc.profit(i), w);
            }
        }
    }
    Ok(vec![naive.finish(), by_guess.finish(), bounded.finish()])
}

fn garbling(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let mut rng = ChaCha8Rng::seed_from_u64(GARBLING_SEED);
    let strategies = grid(CHECK_GRID).strategies();
    let protocols = Protocol::builtins(n);
    let mut monotone = Tally::new("garbling-never-increases-profit");
    for _ in 0..GARBLING_CASES {
        let base = protocols[rng.gen_range(0..protocols.len())].clone();
        let profile = StrategyProfile::new(
            (0..n)
                .map(|_| strategies[rng.gen_range(0..strategies.len())].clone())
                .collect(),
        )?;
        let noise: Vec<Rational> = (0..=n).map(|_| ratio(rng.gen_range(4..=8), 8)).collect();
        let garbled = Protocol::garble(base.clone(), noise.clone())?;
        for i in sc.agents() {
            let before = expected_profit(sc, &profile, &base, i)?;
            let after = expected_profit(sc, &profile, &garbled, i)?;
            monotone.check(after <= before, || {
                json!({"profile": profile, "protocol": base.name(), "noise": noise.iter().map(r).collect::<Vec<_>>(), "agent": i, "before": r(&before), "after": r(&after)})
            });
        }
    }
    Ok(vec![monotone.finish()])
}

fn better_than_nothing(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let mut ev = Evaluator::new(sc);
    let baselines = sc.agents().map(|i| baseline_profit(sc, i)).collect::<Result<Vec<_>>>()?;
    let mut fmin_constant = Tally::new("fmin-profit-equals-baseline");
    let mut lower = Tally::new("every-protocol-at-least-fmin");
    for profile in sample_profiles(n, ENUMERATION_GRID) {
        for i in sc.agents() {
            let none = ev.expected_profit(&profile, &Protocol::FMin, i)?;
            fmin_constant.check(none == baselines[i - 1], || {
                json!({"profile": profile, "agent": i, "fmin": r(&none), "baseline": r(&baselines[i - 1])})
            });
            for protocol in Protocol::builtins(n) {
                let v = ev.expected_profit(&profile, &protocol, i)?;
                lower.check(v >= none, || {
                    json!({"profile": profile, "protocol": protocol.name(), "agent": i, "profit": r(&v), "fmin": r(&none)})
                });
            }
        }
    }
    Ok(vec![fmin_constant.finish(), lower.finish()])
}

fn improvement(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let mut ev = Evaluator::new(sc);
    let mut t = Tally::new("improved-protocol-utility-at-least-base");
    for profile in sample_profiles(n, ENUMERATION_GRID) {
        for base in Protocol::builtins(n) {
            let improved = Protocol::improve(base.clone());
            for i in sc.agents() {
                let before = ev.utility(&profile, &base, i)?;
                let after = ev.utility(&profile, &improved, i)?;
                t.check(after >= before, || {
                    json!({"profile": profile, "protocol": base.name(), "agent": i, "base": r(&before), "improved": r(&after)})
                });
            }
        }
    }
    Ok(vec![t.finish()])
}

fn zero_profile(n: usize) -> Result<StrategyProfile> {
    Ok(StrategyProfile::uniform(n, Strategy::zero_information(half())?))
}

fn helpless_zero_info(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let helpless = is_helpless(sc)?;
    let cert = Evaluator::new(sc).certificate(&zero_profile(n)?, &Protocol::competitive(), &grid(CHECK_GRID), &Rational::zero())?;
    let mut out = vec![single("zero-information-equilibrium-iff-helpless", cert.is_equilibrium() == helpless, || {
        json!({"helpless": helpless, "certificate": cert})
    })];
    if helpless {
        let found = enumerate_equilibria(
            sc,
            &Protocol::competitive(),
            &grid(ENUMERATION_GRID),
            CheckConfig::default().resolved_policy(n),
            DEFAULT_CANDIDATE_CAP,
        )?;
        let has_zero = found.iter().any(|c| c.class() == ProfileClass::AllZeroInformation);
        out.push(single("helpless-center-admits-zero-information", has_zero, || {
            json!({"equilibria": found.iter().map(|c| &c.profile).collect::<Vec<_>>()})
        }));
    }
    Ok(out)
}

fn fanatic(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let search_grid = grid(if n <= 2 { ENUMERATION_GRID } else { 2 });
    let mut closed = Tally::new("closed-form-matches-search");
    let mut flags = Vec::new();
    for i in sc.agents() {
        let a = is_fanatic(sc, i)?;
        let b = is_fanatic_by_search(sc, i, &search_grid, DEFAULT_CANDIDATE_CAP)?;
        closed.check(a == b, || json!({"agent": i, "closed_form": a, "search": b}));
        flags.push(a);
    }
    let any = flags.iter().any(|&f| f);
    let cert = Evaluator::new(sc).certificate(
        &StrategyProfile::all_truthful(n),
        &Protocol::competitive(),
        &grid(CHECK_GRID),
        &Rational::zero(),
    )?;
    let iff = single("truthful-equilibrium-iff-no-fanatic", cert.is_equilibrium() != any, || {
        json!({"fanatic": flags, "certificate": cert})
    });
    Ok(vec![closed.finish(), iff])
}

fn two_classes(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let protocol = Protocol::competitive();
    let found = enumerate_equilibria(
        sc,
        &protocol,
        &grid(ENUMERATION_GRID),
        CheckConfig::default().resolved_policy(n),
        DEFAULT_CANDIDATE_CAP,
    )?;
    let mut t = Tally::new("equilibria-all-truthful-or-all-zero-information");
    for c in &found {
        t.check(c.class() != ProfileClass::Other, || json!({"certificate": c}));
    }
    Ok(vec![t.finish()])
}

fn zero_info_deviation(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let protocol = Protocol::competitive();
    let truthful = StrategyProfile::all_truthful(n);
    let mut ev = Evaluator::new(sc);
    let strategies = grid(CHECK_GRID).strategies();
    let mut t = Tally::new("zero-information-beats-partial-deviation");
    for i in sc.agents() {
        let zero_utils: Vec<(Strategy, Rational)> = strategies
            .iter()
            .filter(|s| s.is_zero_information())
            .map(|s| Ok((s.clone(), ev.utility(&truthful.with(i, s.clone()), &protocol, i)?)))
            .collect::<Result<_>>()?;
        for s in strategies.iter().filter(|s| !s.is_truthful() && !s.is_zero_information()) {
            let u = ev.utility(&truthful.with(i, s.clone()), &protocol, i)?;
            for (z, uz) in &zero_utils {
                t.check(u < *uz, || {
                    json!({"agent": i, "deviation": s, "utility": r(&u), "zero_information": z, "zero_information_utility": r(uz)})
                });
            }
        }
    }
    Ok(vec![t.finish()])
}

fn representative_invariance(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let g = grid(if n <= 2 { ENUMERATION_GRID } else { 2 });
    let strategies = g.strategies();
    let zeros: Vec<Strategy> = strategies.iter().filter(|s| s.is_zero_information()).cloned().collect();
    let rep = Strategy::zero_information(half())?;
    let mut ev = Evaluator::new(sc);
    let mut t = Tally::new("zero-information-representative-irrelevant");
    for profile in g.profiles(n) {
        for j in sc.agents().filter(|&j| profile.get(j).is_zero_information()) {
            let reference = profile.with(j, rep.clone());
            for protocol in Protocol::builtins(n) {
                let utils = sc
                    .agents()
                    .map(|i| ev.utility(&reference, &protocol, i))
                    .collect::<Result<Vec<_>>>()?;
                for z in &zeros {
                    let moved = profile.with(j, z.clone());
                    for i in sc.agents() {
                        let u = ev.utility(&moved, &protocol, i)?;
                        t.check(u == utils[i - 1], || {
                            json!({"profile": moved, "reference": reference, "protocol": protocol.name(), "agent": i, "utility": r(&u), "reference_utility": r(&utils[i - 1])})
                        });
                    }
                }
            }
        }
    }
    Ok(vec![t.finish()])
}

fn uniqueness(sc: &Scenario) -> Result<Vec<Assertion>> {
    let report = check_uniqueness(sc, &CheckConfig::default())?;
    let v = &report.verdicts;
    let w = || json!({"fanatic": report.fanatic, "helpless": report.helpless, "enumeration": report.enumeration});
    Ok(vec![
        single("truthful-equilibrium-iff-no-fanatic", v.truthful_iff_no_fanatic, w),
        single("zero-information-equilibrium-iff-helpless", v.zero_information_iff_helpless, w),
        single("only-two-classes", v.only_two_classes, w),
        single("unique-truthful-iff-not-helpless-and-no-fanatic", v.unique_truthful_iff_conditions, w),
    ])
}

fn equivalence(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let policy = CheckConfig::default().resolved_policy(n);
    let report = check_equivalence(sc, &grid(ENUMERATION_GRID), policy, DEFAULT_CANDIDATE_CAP)?;
    Ok(vec![single("competitive-and-fair-competitive-agree", report.identical, || {
        json!({"only_competitive": report.only_competitive, "only_fair_competitive": report.only_fair_competitive})
    })])
}

/// Indicator ranking against relative-price ranking. Candidates sit on the
/// enumeration grid and deviations on its refinement, so that an agent at
/// the smallest candidate gap can still undercut.
fn indicator(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let policy = CheckConfig::default().resolved_policy(n);
    let candidate = grid(ENUMERATION_GRID);
    let deviation = grid(2 * ENUMERATION_GRID);
    let set = |p: Protocol| -> Result<Vec<StrategyProfile>> {
        Ok(enumerate_equilibria_refined(sc, &p, &candidate, &deviation, policy, DEFAULT_CANDIDATE_CAP)?
            .into_iter()
            .map(|c| c.profile)
            .collect())
    };
    let base = set(Protocol::competitive())?;
    let mut out = Vec::new();
    for (name, p) in [
        ("competitive-indicator-agrees", Protocol::Competitive(Ranking::Indicator)),
        ("fair-competitive-indicator-agrees", Protocol::FairCompetitive(Ranking::Indicator)),
    ] {
        let other = set(p.clone())?;
        out.push(single(name, other == base, || {
            json!({"protocol": p.name(), "competitive": base, "indicator": other})
        }));
    }
    Ok(out)
}

fn monte_carlo(sc: &Scenario) -> Result<Vec<Assertion>> {
    let n = sc.n_agents();
    let profiles = [
        StrategyProfile::all_truthful(n),
        zero_profile(n)?,
        StrategyProfile::new((0..n).map(|k| if k == 0 { Strategy::new(ratio(4, 5), ratio(2, 5)) } else { Ok(Strategy::truthful()) }).collect::<Result<_>>()?)?,
    ];
    let mut t = Tally::new("empirical-profit-within-four-sigma");
    for profile in &profiles {
        for protocol in Protocol::builtins(n) {
            let cfg = RunConfig::new(sc.clone(), profile.clone(), protocol.name(), SIMULATION_TRIALS, SIMULATION_SEED)?;
            let summary = simulate(&cfg)?.summary;
            for i in 0..n {
                t.check(summary.within_four_sigma[i], || json!({"summary": summary}));
            }
        }
    }
    Ok(vec![t.finish()])
}
