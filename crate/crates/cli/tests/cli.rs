use std::process::{Command, Output};

use serde_json::Value;

const FIELDS: [&str; 9] =
    ["problem", "gamma", "lambda", "radius", "residual", "iterations", "pass", "margin", "witness_a"];

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr")).args(args).output().expect("run bohr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn single(args: &[&str]) -> (i32, Value) {
    let out = bohr(args);
    let mut recs = records(&out);
    assert_eq!(recs.len(), 1, "stdout: {}", String::from_utf8_lossy(&out.stdout));
    (code(&out), recs.remove(0))
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn radius_examples() {
    let (c, v) = single(&["radius", "classical", "--gamma", "0"]);
    assert_eq!(c, 0);
    assert!((num(&v, "radius") - 1.0 / 3.0).abs() < 1e-9);

    let (c, v) = single(&["radius", "refined-lk", "--lambda", "r"]);
    assert_eq!(c, 0);
    assert!((num(&v, "radius") - 0.390504).abs() < 1e-4);
    assert_eq!(v["lambda"], "r");

    let (c, v) = single(&["radius", "refined-s", "--lambda", "0"]);
    assert_eq!(c, 0);
    assert!((num(&v, "radius") - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-8);

    let (c, v) = single(&["radius", "laplace", "--gamma", "0"]);
    assert_eq!(c, 0);
    assert!((num(&v, "radius") - 0.940599).abs() < 1e-5);
    assert!(num(&v, "residual").abs() <= 1e-8);
}

#[test]
fn record_has_exactly_the_documented_fields() {
    let (_, v) = single(&["radius", "refined-lk", "--lambda", "r"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, FIELDS);
    assert!(v["witness_a"].is_null());
}

#[test]
fn csv_header_is_frozen() {
    let out = bohr(&["radius", "classical", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), FIELDS.join(","));
    let table = bohr(&["table", "t1", "--format", "csv"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "lambda_source,computed_radius,paper_value,abs_diff,flag");
    assert_eq!(text.lines().count(), 12);
}

fn table_row<'a>(rows: &'a [Value], lambda: &str) -> &'a Value {
    rows.iter().find(|r| r["lambda_source"] == lambda).unwrap()
}

#[test]
fn table_examples() {
    let out = bohr(&["table", "t1"]);
    assert_eq!(code(&out), 0);
    let rows = records(&out);
    assert_eq!(rows.len(), 11);
    assert!((num(table_row(&rows, "exp(r)"), "computed_radius") - 0.383116).abs() < 1e-4);

    let out = bohr(&["table", "t2"]);
    assert_eq!(code(&out), 0);
    let rows = records(&out);
    assert_eq!(rows.len(), 14);
    assert!((num(table_row(&rows, "sin(r)"), "computed_radius") - 0.37483).abs() < 1e-4);
    assert!((num(table_row(&rows, "r^2"), "computed_radius") - 0.379046).abs() < 1e-4);
    let flagged: Vec<&str> = rows
        .iter()
        .filter(|r| r["flag"] == "ambiguous-label")
        .map(|r| r["lambda_source"].as_str().unwrap())
        .collect();
    assert_eq!(flagged, ["r/(1-r)^2", "r*exp(r)/(1-r)^2", "r/(1-r)^2"]);
    for row in &rows {
        assert!(num(row, "abs_diff") <= 1e-4, "{row}");
    }
}

#[test]
fn verify_examples() {
    let (c, v) = single(&["verify", "fourier", "--gamma", "0", "--a", "0.9", "--r", "0.333333"]);
    assert_eq!(c, 0);
    assert_eq!(v["pass"], true);

    let (c, v) = single(&["verify", "sharpness-fourier", "--gamma", "0", "--r", "0.4"]);
    assert_eq!(c, 0);
    assert!(num(&v, "witness_a") <= 0.8);

    let (c, v) = single(&["verify", "lemma-a", "--gamma", "0.5", "--a", "0.9"]);
    assert_eq!(c, 0);
    assert!(num(&v, "margin").abs() < 1e-12);

    let (c, _) = single(&["verify", "refined", "--class", "lk", "--lambda", "r", "--r", "0.39"]);
    assert_eq!(c, 0);
    let (c, v) = single(&["verify", "laplace", "--a", "0.5", "--r", "0.9"]);
    assert_eq!(c, 0);
    assert_eq!(v["witness_a"], 0.5);
}

#[test]
fn verification_failure_exits_4_with_record() {
    let out = bohr(&["verify", "refined", "--class", "lk", "--lambda", "r", "--r", "0.40"]);
    assert_eq!(code(&out), 4);
    let recs = records(&out);
    assert_eq!(recs[0]["pass"], false);
    assert!(num(&recs[0], "margin") < 0.0);
    assert!(!out.stderr.is_empty());

    let out = bohr(&["verify", "fourier", "--a", "0.9", "--r", "0.4"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["frobnicate"][..],
        &["radius"],
        &["radius", "refined-lk"],
        &["radius", "classical", "--gamma", "abc"],
        &["radius", "classical", "--gamma", "1.5"],
        &["radius", "refined-lk", "--lambda", "r", "--tol", "0"],
        &["verify", "sharpness-fourier", "--r", "0.3"],
        &["eval", "sum", "--r", "0.5"],
        &["eval", "dilog", "--r", "2"],
    ] {
        let out = bohr(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn lambda_errors_exit_2_with_position() {
    let out = bohr(&["radius", "refined-lk", "--lambda", "r + foo"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 4"), "{err}");
    // domain error during evaluation
    let out = bohr(&["radius", "refined-s", "--lambda", "ln(r - 0.5)"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_root_exits_3() {
    let out = bohr(&["radius", "laplace", "--gamma", "0.9"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
    let out = bohr(&["radius", "refined-lk", "--lambda", "1000 - 1000"]);
    assert_eq!(code(&out), 0);
    // a large negative weight keeps the equation below zero at both ends
    let out = bohr(&["radius", "refined-lk", "--lambda", "0 - 100"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&bohr(&["--help"])), 0);
    assert_eq!(code(&bohr(&["--version"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "t2", "--format", "csv"][..],
        &["table", "t1", "--format", "text"],
        &["radius", "laplace", "--gamma", "0.2"],
        &["verify", "sharpness-laplace", "--r", "0.5"],
    ] {
        let a = bohr(args);
        let b = bohr(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let out = bohr(&["table", "t1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let direct = bohr(&["table", "t1", "--format", "csv"]);
    assert_eq!(written.as_bytes(), direct.stdout.as_slice());
}

#[test]
fn eval_commands() {
    let (c, v) = single(&["eval", "dilog", "--r", "0.5"]);
    assert_eq!(c, 0);
    let expected = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
    assert!((num(&v, "value") - expected).abs() < 1e-8);

    let (_, v) = single(&["eval", "sum", "--family", "lk", "--r", "0.3"]);
    assert!((num(&v, "value") + 2.0 * 0.7f64.ln()).abs() < 1e-8);

    let (_, v) = single(&["eval", "sum", "--coeffs", "1,1,1", "--series", "fourier", "--r", "0.5"]);
    // partial sums 1, 2, 3, 3, … → 1 + 2·0.5 + 3·0.25/(1 − 0.5)
    assert!((num(&v, "value") - 3.5).abs() < 1e-9);

    let (_, v) = single(&[
        "eval", "sum", "--family", "f0", "--a", "0.9", "--r", "0.5", "--series", "laplace",
    ]);
    assert!(num(&v, "value") <= (2f64.ln() / 0.5) + 1e-9);

    let out = bohr(&["eval", "sum", "--family", "koebe", "--r", "0.99", "--max-terms", "10"]);
    assert_eq!(code(&out), 3);
}
