//! The binary's exit-code contract, config handling and report output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclomzv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cyclomzv-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn dims_table_at_q3_n2() {
    let o = bin(&["dims", "--q", "3", "--N", "2", "--wmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let d: Vec<String> = stdout(&o)
        .lines()
        .skip(3)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(d, ["1", "2", "6", "16", "46"]);
}

#[test]
fn reduce_zeta_three_over_f2() {
    let o = bin(&["reduce", "--q", "2", "--N", "1", "--array", "(3;1)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["diagnostics"]["ok"], true);
    assert_eq!(v["diagnostics"]["residual_precision"], 150);
    let out = v["results"]["output"].as_array().unwrap();
    assert!(!out.is_empty());
    assert!(out.iter().all(|t| ["(3;0)", "(1;0),(1;0),(1;0)"].contains(&t["array"].as_str().unwrap())));
}

#[test]
fn empty_array_evaluates_to_one() {
    let o = bin(&["eval", "--q", "3", "--N", "1", "--array", "()", "--prec", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["series"]["lead_val"], 0);
    assert_eq!(v["results"]["series"]["coeffs"], serde_json::json!([1]));
}

#[test]
fn config_errors_exit_one() {
    for args in [
        &["dims", "--q", "6", "--N", "1"][..],
        &["dims", "--N", "1"],
        &["dims", "--q", "3", "--N", "0"],
        &["eval", "--q", "3", "--N", "1", "--array", "(0;1)"],
        &["product", "--q", "3", "--N", "1", "--A", "()", "--B", "(1;0)"],
        &["dims", "--config", "/nonexistent/run.toml"],
        &["frobnicate"],
    ] {
        assert_eq!(bin(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn toml_config_with_flag_override() {
    let dir = scratch("toml");
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "p = 3\nN = 2\nprecision = 40\nseed = 5\n").unwrap();
    let o = bin(&["eval", "--config", cfg.to_str().unwrap(), "--prec", "30", "--array", "(1;1)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["precision"], 30);
    assert_eq!(v["config"]["N"], 2);
    assert_eq!(v["config"]["seed"], 5);
    std::fs::write(&cfg, "p = 3\nN = 2\nprecsion = 40\n").unwrap();
    assert_eq!(bin(&["dims", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn report_files_are_byte_stable() {
    let dir = scratch("stable");
    let out = dir.join("r.json");
    let args = ["independence", "--q", "3", "--N", "1", "--w", "2", "--deg", "4", "--prec", "200", "--output", out.to_str().unwrap()];
    assert_eq!(bin(&args).status.code(), Some(0));
    let first = std::fs::read(&out).unwrap();
    assert_eq!(bin(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&out).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert!(v.get("timings").is_none());
    assert_eq!(v["results"]["relation_rank"], 1);
    let mut timed = args.to_vec();
    timed.push("--timings");
    bin(&timed);
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert!(v["timings"]["total_seconds"].is_number());
}

#[test]
fn motive_reports_trivialization_window() {
    let o = bin(&["motive", "--q", "3", "--N", "2", "--array", "(1;1),(2;0)", "--check-triv", "--prec", "120", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"]["phi"]["size"], 3);
    assert!(v["results"]["trivialization"]["failures"].as_array().unwrap().is_empty());
    assert!(v["results"]["value_identity"]["agreeing"].as_i64().unwrap() >= 40);
}

#[test]
fn selftest_small_passes() {
    let o = bin(&["selftest", "--scale", "small", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("[PASS]")).count(), 8);
}
