use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn uidim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uidim")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = uidim(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    uidim(args).status.code().unwrap()
}

#[test]
fn analyze_chain() {
    let v = json(&["analyze", &data("chain.json")]);
    assert_eq!(v["ui_dim"], 1);
    assert_eq!(v["vc_dim"], 1);
    assert_eq!(v["boundedness"]["min_d"], 1);
    assert_eq!(v["is_chain"], true);
}

#[test]
fn analyze_powerset() {
    let v = json(&["analyze", &data("powerset2.json")]);
    assert_eq!(v["vc_dim"], 2);
    assert_eq!(v["vc_witness"], serde_json::json!(["a", "b"]));
}

#[test]
fn analyze_text_and_csv() {
    let out = uidim(&["analyze", &data("powerset2.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("vc_dim: 2"), "{text}");
    let out = uidim(&["analyze", &data("powerset2.json"), "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "j,count,ceiling\n1,2,2\n2,1,3\n");
}

#[test]
fn malformed_json_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"universe\": [\"a\"],\n \"sets\": [[\"a\"]\n").unwrap();
    let out = uidim(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["analyze", "/definitely/missing.json"]), 1);
    assert_eq!(code(&["analyze"]), 2);
    assert_eq!(code(&["compose", &data("intersect_unbounded.json")]), 3);
    assert_eq!(code(&["simulate", "random-set", "--union-chains", "50", "--d", "1", "--t-min", "4"]), 3);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.json");
    assert_eq!(code(&["scenario", "prefix-chain", "--n", "22", "--out", p.to_str().unwrap()]), 0);
    assert_eq!(code(&["analyze", p.to_str().unwrap()]), 4);
    assert_eq!(code(&["analyze", p.to_str().unwrap(), "--max-ground", "22"]), 0);
    assert_eq!(code(&["compose", &data("misdeclared.json"), "--verify"]), 5);
    assert_eq!(code(&["compose", &data("misdeclared.json")]), 0);
}

#[test]
fn compose_union_of_two_chains() {
    let v = json(&["compose", &data("union_of_chains.json"), "--verify"]);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["trace"]["rule"], "union");
    assert_eq!(v["verification"]["sound"], true);
}

#[test]
fn compose_deterministic_only() {
    let v = json(&["compose", &data("deterministic_only.json"), "--verify"]);
    assert_eq!(v["bound"], 0);
    assert_eq!(v["dimension"], 1);
}

#[test]
fn compose_expansion_cap() {
    assert_eq!(
        code(&["compose", &data("union_of_chains.json"), "--verify", "--max-expansion", "10"]),
        4
    );
}

#[test]
fn rademacher_small_families() {
    let v = json(&["rademacher", &data("empty_and_a.json"), "--exact"]);
    assert_eq!(v["value"], 0.5);
    let v = json(&["rademacher", &data("full_set.json")]);
    assert_eq!(v["value"], 0.0);
}

#[test]
fn rademacher_mc_is_reproducible() {
    let a = uidim(&["rademacher", &data("powerset2.json"), "--mc", "2000", "--format", "json", "--seed", "9"]);
    let b = uidim(&["rademacher", &data("powerset2.json"), "--mc", "2000", "--format", "json", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["method"]["kind"], "monte_carlo");
}

#[test]
fn rademacher_slices_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("slices.csv");
    let out = uidim(&["rademacher", &data("chain.json"), "--slices-csv", p.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(p).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,count,rad,slice_bound"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn simulate_deterministic_summary_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.json");
    let trials = dir.path().join("trials.csv");
    let out = uidim(&[
        "simulate", "deterministic", "--t", "100", "--trials", "500", "--format", "json",
        "--out", summary.to_str().unwrap(), "--trials-csv", trials.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(summary).unwrap()).unwrap();
    for key in ["trials", "failures", "empirical_rate", "theoretical_bound"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["trials"], 500);
    let csv = std::fs::read_to_string(trials).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("trial_index,chosen_set_size,reds,imbalance,threshold,exceeded"));
    assert_eq!(lines.count(), 500);
}

#[test]
fn simulate_quarterplane_reports_ratio() {
    let v = json(&["simulate", "quarterplane", "--n", "2000", "--trials", "20"]);
    assert_eq!(v["theoretical_bound"], Value::Null);
    assert!(v["mean_ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_random_set_default_d() {
    let v = json(&["simulate", "random-set", "--union-chains", "60", "--t-min", "8", "--trials", "300"]);
    assert_eq!(v["d"], 2);
    assert_eq!(v["theoretical_bound"], 0.5);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn scenario_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("q.json");
    assert_eq!(code(&["scenario", "quarterplane", "--n", "8", "--out", p.to_str().unwrap()]), 0);
    let v = json(&["analyze", p.to_str().unwrap()]);
    assert_eq!(v["boundedness"]["min_d"], 4);
}

#[test]
fn default_seed_is_fixed() {
    let a = uidim(&["simulate", "deterministic", "--t", "50", "--trials", "100", "--format", "csv"]);
    let b = uidim(&["simulate", "deterministic", "--t", "50", "--trials", "100", "--format", "csv", "--seed", &uidim::cli::DEFAULT_SEED.to_string()]);
    assert_eq!(a.stdout, b.stdout);
}
