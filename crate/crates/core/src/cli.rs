//! The `curation` command line.
//!
//! Exit codes: 0 when every checked statement holds, 1 when an assertion or
//! consistency verdict fails, 2 on usage, parse or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::battery::{battery, load_dir};
use crate::equilibrium::{
    check_equivalence, check_uniqueness, enumerate_equilibria_refined, CandidatePolicy, CheckConfig, EquilibriumCertificate,
    EquivalenceReport, StrategyGrid, UniquenessReport, CHECK_GRID, DEFAULT_CANDIDATE_CAP, ENUMERATION_GRID,
};
use crate::error::{Error, Result};
use crate::inference::expected_profit;
use crate::model::{price, Scenario, StrategyProfile};
use crate::montecarlo::{csv_err, simulate, RunConfig};
use crate::protocol::Protocol;
use crate::rational::{decimal, format_rational, serde_rational, Rational};
use crate::verify::{resolve_suites, run_suites, SuiteResult};

#[derive(Debug, Parser)]
#[command(name = "curation", version, about = "Truthful information curation games: exact evaluation, equilibria and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected profit, price and utility of every agent at a profile.
    Eval(EvalArgs),
    /// Grid equilibria of a protocol.
    Equilibria(EquilibriaArgs),
    /// Fanatic and helpless conditions, equilibrium structure and protocol equivalence.
    Check(CheckArgs),
    /// Seeded simulation of the game.
    Simulate(SimulateArgs),
    /// Invariant suites over a set of scenarios.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Strategies as `p,q;p,q;...`, one per agent.
    #[arg(long)]
    pub profile: String,
    #[arg(long, default_value = "competitive")]
    pub protocol: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EquilibriaArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, default_value = "competitive")]
    pub protocol: String,
    /// Candidate grid denominator.
    #[arg(long, default_value_t = ENUMERATION_GRID)]
    pub grid: u32,
    /// Deviation grid denominator; defaults to the candidate grid.
    #[arg(long)]
    pub deviation_grid: Option<u32>,
    /// Every grid profile rather than the structured candidate set.
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
    pub cap: u128,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Enumeration grid denominator.
    #[arg(long, default_value_t = ENUMERATION_GRID)]
    pub grid: u32,
    /// Deviation grid for the truthful and zero-information certificates.
    #[arg(long, default_value_t = CHECK_GRID)]
    pub check_grid: u32,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP)]
    pub cap: u128,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub profile: String,
    #[arg(long, default_value = "competitive")]
    pub protocol: String,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Directory of scenario files; defaults to the built-in battery.
    #[arg(long)]
    pub scenarios: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentValues {
    pub agent: usize,
    #[serde(with = "serde_rational")]
    pub profit: Rational,
    pub profit_decimal: String,
    #[serde(with = "serde_rational")]
    pub price: Rational,
    pub price_decimal: String,
    #[serde(with = "serde_rational")]
    pub utility: Rational,
    pub utility_decimal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub scenario: String,
    pub protocol: String,
    pub profile: StrategyProfile,
    pub agents: Vec<AgentValues>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub uniqueness: UniquenessReport,
    pub equivalence: EquivalenceReport,
}

impl CheckRecord {
    pub fn holds(&self) -> bool {
        self.uniqueness.verdicts.all_hold() && self.equivalence.identical
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs a parsed command; `Ok(false)` means some checked statement failed.
pub fn execute(command: &Command) -> Result<bool> {
    match command {
        Command::Eval(a) => {
            let record = cmd_eval(&Scenario::load(&a.scenario)?, &StrategyProfile::parse(&a.profile)?, &Protocol::parse(&a.protocol)?)?;
            let bytes = match a.output.format {
                Format::Json => pretty(&record)?,
                Format::Csv => eval_csv(&record)?,
            };
            emit(a.output.out.as_deref(), &bytes)?;
            Ok(true)
        }
        Command::Equilibria(a) => {
            let scenario = Scenario::load(&a.scenario)?;
            let policy = if a.exhaustive { CandidatePolicy::Exhaustive } else { CandidatePolicy::Structured };
            let candidate = StrategyGrid::new(a.grid)?;
            let deviation = StrategyGrid::new(a.deviation_grid.unwrap_or(a.grid))?;
            let certs = enumerate_equilibria_refined(&scenario, &Protocol::parse(&a.protocol)?, &candidate, &deviation, policy, a.cap)?;
            let bytes = match a.output.format {
                Format::Json => pretty(&certs)?,
                Format::Csv => certificates_csv(&certs)?,
            };
            emit(a.output.out.as_deref(), &bytes)?;
            Ok(true)
        }
        Command::Check(a) => {
            let scenario = Scenario::load(&a.scenario)?;
            let record = cmd_check(&scenario, a.grid, a.check_grid, a.exhaustive, a.cap)?;
            let bytes = match a.output.format {
                Format::Json => pretty(&record)?,
                Format::Csv => check_csv(&record)?,
            };
            emit(a.output.out.as_deref(), &bytes)?;
            Ok(record.holds())
        }
        Command::Simulate(a) => {
            let config = RunConfig::new(
                Scenario::load(&a.scenario)?,
                StrategyProfile::parse(&a.profile)?,
                a.protocol.clone(),
                a.trials,
                a.seed,
            )?;
            let transcript = simulate(&config)?;
            let mut bytes = Vec::new();
            match a.output.format {
                Format::Json => transcript.write_jsonl(&mut bytes)?,
                Format::Csv => transcript.write_csv(&mut bytes)?,
            }
            emit(a.output.out.as_deref(), &bytes)?;
            Ok(true)
        }
        Command::Verify(a) => {
            let suites = resolve_suites(&a.suite)?;
            let scenarios = match &a.scenarios {
                Some(dir) => load_dir(dir)?,
                None => battery()?,
            };
            if scenarios.is_empty() {
                return Err(Error::Config("no scenarios to verify".into()));
            }
            let results = run_suites(&suites, &scenarios)?;
            let bytes = match a.output.format {
                Format::Json => pretty(&results)?,
                Format::Csv => verify_csv(&results)?,
            };
            emit(a.output.out.as_deref(), &bytes)?;
            Ok(results.iter().all(SuiteResult::passed))
        }
    }
}

pub fn cmd_eval(scenario: &Scenario, profile: &StrategyProfile, protocol: &Protocol) -> Result<EvalRecord> {
    let mut agents = Vec::new();
    for i in scenario.agents() {
        let profit = expected_profit(scenario, profile, protocol, i)?;
        let price = price(scenario.price_fn(i), profile.get(i));
        let utility = &profit - &price;
        agents.push(AgentValues {
            agent: i,
            profit_decimal: decimal(&profit),
            price_decimal: decimal(&price),
            utility_decimal: decimal(&utility),
            profit,
            price,
            utility,
        });
    }
    Ok(EvalRecord {
        scenario: scenario.id(),
        protocol: protocol.name(),
        profile: profile.clone(),
        agents,
    })
}

pub fn cmd_check(scenario: &Scenario, grid: u32, check_grid: u32, exhaustive: bool, cap: u128) -> Result<CheckRecord> {
    let config = CheckConfig {
        check_grid: StrategyGrid::new(check_grid)?,
        enumeration_grid: StrategyGrid::new(grid)?,
        policy: exhaustive.then_some(CandidatePolicy::Exhaustive),
        cap,
    };
    let uniqueness = check_uniqueness(scenario, &config)?;
    let equivalence = check_equivalence(scenario, &config.enumeration_grid, config.resolved_policy(scenario.n_agents()), cap)?;
    Ok(CheckRecord { uniqueness, equivalence })
}

fn pretty<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn eval_csv(record: &EvalRecord) -> Result<Vec<u8>> {
    let rows = record
        .agents
        .iter()
        .map(|a| {
            vec![
                record.scenario.clone(),
                record.protocol.clone(),
                record.profile.to_string(),
                a.agent.to_string(),
                format_rational(&a.profit),
                a.profit_decimal.clone(),
                format_rational(&a.price),
                a.price_decimal.clone(),
                format_rational(&a.utility),
                a.utility_decimal.clone(),
            ]
        })
        .collect();
    csv_bytes(
        &["scenario", "protocol", "profile", "agent", "profit", "profit_decimal", "price", "price_decimal", "utility", "utility_decimal"],
        rows,
    )
}

fn certificates_csv(certs: &[EquilibriumCertificate]) -> Result<Vec<u8>> {
    let rows = certs
        .iter()
        .map(|c| {
            vec![
                c.profile.to_string(),
                c.protocol.clone(),
                c.grid.denominator().to_string(),
                c.gains.iter().map(format_rational).collect::<Vec<_>>().join("|"),
                c.verdict.to_string(),
            ]
        })
        .collect();
    csv_bytes(&["profile", "protocol", "grid", "gains", "verdict"], rows)
}

fn check_csv(record: &CheckRecord) -> Result<Vec<u8>> {
    let u = &record.uniqueness;
    let v = &u.verdicts;
    let flags = |xs: &[bool]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("|");
    let row = vec![
        u.scenario.clone(),
        u.helpless.to_string(),
        flags(&u.fanatic),
        u.truthful.verdict.to_string(),
        u.zero_information.verdict.to_string(),
        u.enumeration.all_truthful.to_string(),
        u.enumeration.all_zero_information.to_string(),
        u.enumeration.other.to_string(),
        u.unique_truthful.to_string(),
        v.truthful_iff_no_fanatic.to_string(),
        v.zero_information_iff_helpless.to_string(),
        v.only_two_classes.to_string(),
        v.unique_truthful_iff_conditions.to_string(),
        record.equivalence.identical.to_string(),
    ];
    csv_bytes(
        &[
            "scenario",
            "helpless",
            "fanatic",
            "truthful",
            "zero_information",
            "all_truthful_equilibria",
            "zero_information_equilibria",
            "other_equilibria",
            "unique_truthful",
            "truthful_iff_no_fanatic",
            "zero_information_iff_helpless",
            "only_two_classes",
            "unique_truthful_iff_conditions",
            "fair_competitive_identical",
        ],
        vec![row],
    )
}

fn verify_csv(results: &[SuiteResult]) -> Result<Vec<u8>> {
    let mut rows = Vec::new();
    for r in results {
        for a in &r.assertions {
            rows.push(vec![
                r.suite.clone(),
                r.scenario.clone(),
                a.name.clone(),
                a.passed.to_string(),
                a.cases.to_string(),
                a.counterexample.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            ]);
        }
    }
    csv_bytes(&["suite", "scenario", "assertion", "passed", "cases", "counterexample"], rows)
}
