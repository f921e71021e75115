use std::path::PathBuf;
use std::process::{Command, Output};

use curation_game::cli::{CheckRecord, EvalRecord};
use curation_game::equilibrium::EquilibriumCertificate;
use curation_game::montecarlo::TrialRecord;
use curation_game::rational::ratio;
use curation_game::verify::SuiteResult;

fn scenario(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let path = if name.starts_with("and-center-right") {
        dir.join("tests/fixtures").join(name)
    } else {
        dir.join("scenarios").join(name)
    };
    path.to_string_lossy().into_owned()
}

fn fixtures() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures").to_string()
}

fn curation(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curation")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn eval_truthful_and_xor_center() {
    let out = curation(&["eval", "--scenario", &scenario("and-xor-center-w1-10.json"), "--profile", "1/1,0/1;1/1,0/1", "--protocol", "competitive"]);
    assert_eq!(code(&out), 0);
    let rec: EvalRecord = serde_json::from_slice(&out.stdout).unwrap();
    let u: Vec<_> = rec.agents.iter().map(|a| a.utility.clone()).collect();
    assert_eq!(u, vec![ratio(9, 10), ratio(9, 10)]);
    assert_eq!(rec.agents[0].utility_decimal, "0.900000");
}

#[test]
fn eval_parity_fmin() {
    let out = curation(&["eval", "--scenario", &scenario("parity3-w1-10.json"), "--profile", "1/2,1/2;1/2,1/2", "--protocol", "fmin"]);
    assert_eq!(code(&out), 0);
    let rec: EvalRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec.agents.iter().all(|a| a.utility == ratio(1, 2)));
}

#[test]
fn eval_csv() {
    let out = curation(&["eval", "--scenario", &scenario("parity3-w1-10.json"), "--profile", "1,0;1,0", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().contains("9/10"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let parity = scenario("parity3-w1-10.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "--scenario", &parity, "--profile", "1/1,0/1;garbage"],
        vec!["eval", "--scenario", &parity, "--profile", "1,0"],
        vec!["eval", "--scenario", &parity, "--profile", "3/2,0;1,0"],
        vec!["eval", "--scenario", &parity, "--profile", "1,0;1,0", "--protocol", "nope"],
        vec!["eval", "--scenario", "/does/not/exist.json", "--profile", "1,0;1,0"],
        vec!["eval", "--profile", "1,0;1,0"],
        vec!["simulate", "--scenario", &parity, "--profile", "1,0;1,0", "--trials", "0"],
        vec!["equilibria", "--scenario", &parity, "--exhaustive", "--grid", "10", "--cap", "100"],
        vec!["verify", "--suite", "no-such-suite"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let out = curation(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn check_parity_reports_helpless_center() {
    let out = curation(&["check", "--scenario", &scenario("parity3-w1-10.json"), "--exhaustive"]);
    assert_eq!(code(&out), 0);
    let rec: CheckRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rec.uniqueness.helpless);
    assert_eq!(rec.uniqueness.fanatic, vec![false, false]);
    assert!(rec.holds());
}

#[test]
fn check_exits_one_on_grid_artifacts() {
    let out = curation(&["check", "--scenario", &scenario("and-center-right-w1-5.json"), "--exhaustive"]);
    assert_eq!(code(&out), 1);
    let rec: CheckRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!rec.uniqueness.verdicts.only_two_classes);
}

#[test]
fn equilibria_and_xor_center_only_truthful() {
    let out = curation(&["equilibria", "--scenario", &scenario("and-xor-center-w1-10.json"), "--protocol", "competitive", "--exhaustive", "--grid", "4"]);
    assert_eq!(code(&out), 0);
    let certs: Vec<EquilibriumCertificate> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(certs.len(), 1);
    assert!(certs[0].profile.is_all_truthful());
}

#[test]
fn equilibria_refined_deviation_grid_removes_artifacts() {
    let fixture = scenario("and-center-right-w1-5.json");
    let coarse = curation(&["equilibria", "--scenario", &fixture, "--exhaustive", "--grid", "4"]);
    let fine = curation(&["equilibria", "--scenario", &fixture, "--exhaustive", "--grid", "4", "--deviation-grid", "8"]);
    let coarse: Vec<EquilibriumCertificate> = serde_json::from_slice(&coarse.stdout).unwrap();
    let fine: Vec<EquilibriumCertificate> = serde_json::from_slice(&fine.stdout).unwrap();
    assert!(coarse.len() > 1);
    assert_eq!(fine.len(), 1);
}

#[test]
fn verify_exit_codes() {
    let ok = curation(&["verify", "--suite", "two-classes"]);
    assert_eq!(code(&ok), 0);
    let results: Vec<SuiteResult> = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(results.len(), 15);
    assert!(results.iter().all(SuiteResult::passed));

    let failing = curation(&["verify", "--suite", "two-classes", "--scenarios", &fixtures()]);
    assert_eq!(code(&failing), 1);
    let results: Vec<SuiteResult> = serde_json::from_slice(&failing.stdout).unwrap();
    let a = &results[0].assertions[0];
    assert!(!a.passed);
    assert!(a.counterexample.as_ref().unwrap()["certificate"]["profile"].is_array());
}

#[test]
fn simulate_json_lines_round_trip() {
    let out = curation(&["simulate", "--scenario", &scenario("majority3-w1-5.json"), "--profile", "1,0;1/2,1/2", "--protocol", "fair-competitive", "--trials", "50", "--seed", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    for line in &lines[..50] {
        let rec: TrialRecord = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&rec).unwrap(), *line);
    }
    assert!(lines[50].starts_with("{\"summary\""));
}

#[test]
fn simulate_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = curation(&[
        "simulate", "--scenario", &scenario("parity3-w1-10.json"), "--profile", "1,0;1,0", "--protocol", "fmax",
        "--trials", "10", "--format", "csv", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.ends_with("1/1|1/1")));
}
