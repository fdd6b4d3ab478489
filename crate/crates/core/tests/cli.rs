use std::path::Path;
use std::process::{Command, Output};

use birkhoff::cli::VectorPair;
use birkhoff::orthogonality::{bj_orthogonal, Method};
use birkhoff::{LinearOperator, Tolerances};
use serde_json::Value;

fn bj(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bj"))
        .args(args)
        .current_dir(cwd)
        .env_remove("BJ_REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const DIAG: &str = r#"{"matrix":[[1,0],[0,0.5]],"domain":{"kind":"lp","p":2,"dim":2},"codomain":{"kind":"lp","p":2,"dim":2}}"#;
const L1_RANK_ONE: &str = r#"{"matrix":[[0,0.6],[0,0.8]],"domain":{"kind":"lp","p":1,"dim":2},"codomain":{"kind":"lp","p":2,"dim":2}}"#;
const SINGULAR: &str = r#"{"matrix":[[1,0],[0,0]],"domain":{"kind":"lp","p":3,"dim":2},"codomain":{"kind":"lp","p":3,"dim":2}}"#;

#[test]
fn orth_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = bj(
        &["orth", "--space", r#"{"kind":"lp","p":1,"dim":2}"#, "--x", "1,0", "--y", "0.5,1", "--method", "both"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["orthogonal"], Value::Bool(true));

    let out = bj(&["orth", "--space", "l2:2", "--x", "1,0", "--y", "1,0"], dir.path());
    let v = json(&out);
    assert_eq!(v["orthogonal"], Value::Bool(false));
    assert!((v["minimizer"].as_f64().unwrap() + 1.0).abs() < 1e-6);

    let out = bj(&["orth", "--space", "l2:2", "--x", "1,0", "--y", "1,1", "--eps", "0.5", "--cone", "plus"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["inside"].is_boolean());

    let out = bj(&["cone", "--space", "l2:2", "--x", "1,0", "--y", "-1,0", "--cone", "minus"], dir.path());
    assert_eq!(json(&out)["inside"], Value::Bool(true));
}

#[test]
fn floats_have_seventeen_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let out = bj(&["orth", "--space", "l2:2", "--x", "1,0", "--y", "1,0"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.contains("\"base_value\"")).unwrap();
    let number = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let mantissa = number.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{number}");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = bj(&["orth", "--space", "{not json", "--x", "1,0", "--y", "0,1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = bj(&["orth", "--space", "l2:2", "--x", "1,zz", "--y", "0,1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bj(&["orth", "--space", "l2:3", "--x", "1,0", "--y", "0,1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bj(&["falsify", "left", "--op", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bj(&["verify", "no-such-id"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bj(&["verify", "lemma-2.5", "--tol", "bogus=1"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = bj(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn falsify_exit_codes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let diag = write(d, "diag.json", DIAG);
    let l1 = write(d, "l1.json", L1_RANK_ONE);
    let sing = write(d, "sing.json", SINGULAR);

    let out = bj(&["falsify", "left", "--op", &diag, "--budget", "50", "--out", "rep"], d);
    assert_eq!(out.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(d.join("rep")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].to_str().unwrap().to_string();
    assert!(name.starts_with("falsify-") && name.ends_with(".json") && name.len() == "falsify-.json".len() + 64);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(d.join("rep").join(&name)).unwrap()).unwrap();
    assert_eq!(report["config"]["budget"], 50);
    assert!(report["tolerances"]["analytic"].is_number());
    assert_eq!(report["report"]["verdict"], "not-symmetric");

    let again = bj(&["falsify", "left", "--op", &diag, "--budget", "50", "--out", "rep"], d);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(std::fs::read_dir(d.join("rep")).unwrap().count(), 1);

    let out = bj(&["falsify", "left", "--op", &l1, "--budget", "40", "--out", "rep"], d);
    assert_eq!(out.status.code(), Some(3));

    let out = bj(&["falsify", "right", "--op", &sing, "--budget", "40", "--out", "rep"], d);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["witness"]["label"], "identity");
}

#[test]
fn report_dir_environment_overrides_out() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let diag = write(d, "diag.json", DIAG);
    let out = Command::new(env!("CARGO_BIN_EXE_bj"))
        .args(["falsify", "left", "--op", &diag, "--budget", "30", "--out", "ignored"])
        .current_dir(d)
        .env("BJ_REPORT_DIR", d.join("from-env"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!d.join("ignored").exists());
    assert_eq!(std::fs::read_dir(d.join("from-env")).unwrap().count(), 1);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = bj(&["verify", "lemma-2.5", "--trials", "50", "--out", "rep"], d);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bj(&["verify", "th-2.2", "--trials", "5", "--spaces", "lp:3:2,l2:2", "--out", "rep"], d);
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read_dir(d.join("rep"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_str().unwrap().contains("th-2.2"))
        .unwrap();
    let report: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(report["config"]["spaces"][0], "lp:3:2");
    assert_eq!(report["report"]["trials"].as_array().unwrap().len(), 20);
}

#[test]
fn generate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["generate", "operator", "--domain", "l1:3", "--codomain", "lp:2:2", "--rank", "1", "--seed", "5"];
    let a = bj(&args, d);
    let b = bj(&args, d);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let op: LinearOperator = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(op.rank(1e-9), 1);
    let path = write(d, "op.json", std::str::from_utf8(&a.stdout).unwrap());
    assert_eq!(bj(&["opnorm", "--op", &path], d).status.code(), Some(0));
    assert_eq!(bj(&["opnorm", "--op", &path, "--attainment"], d).status.code(), Some(0));
    assert_eq!(bj(&["classify-op", "--op", &path, "--budget", "30"], d).status.code(), Some(0));
    assert_eq!(bj(&["oporth", "--t", &path, "--a", &path], d).status.code(), Some(0));

    let out = bj(
        &["generate", "vector-pair", "--space", "lp:3:2", "--mutual", "--output", "pair.json", "--profile", "p.csv"],
        d,
    );
    assert_eq!(out.status.code(), Some(0));
    let pair: VectorPair = serde_json::from_str(&std::fs::read_to_string(d.join("pair.json")).unwrap()).unwrap();
    let t = Tolerances { analytic: 1e-8, ..Tolerances::default() };
    assert!(bj_orthogonal(&pair.space, &pair.x, &pair.y, Method::Analytic, &t).unwrap().orthogonal);
    assert!(bj_orthogonal(&pair.space, &pair.y, &pair.x, Method::Analytic, &t).unwrap().orthogonal);
    let csv = std::fs::read_to_string(d.join("p.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "lambda,norm");
    assert_eq!(lines.len(), 1002);

    let out = bj(&["orth", "--pair", "pair.json"], d);
    assert_eq!(json(&out)["orthogonal"], Value::Bool(true));
    let out = bj(&["classify-point", "--pair", "pair.json", "--budget", "20"], d);
    assert_eq!(out.status.code(), Some(0));

    let out = bj(
        &["generate", "operator", "--domain", "l2:2", "--codomain", "l3:2", "--profile", "op.csv", "--output", "t.json"],
        d,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(d.join("op.csv")).unwrap().lines().count(), 1002);
}
