use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn structure_of_f4() {
    let v = json(&["structure", "F4"]);
    assert_eq!(v["command"], "structure");
    let d = &v["results"]["structural_data"];
    assert_eq!(d["m_alpha"], 8);
    assert_eq!(d["m_2alpha"], 7);
    assert_eq!(d["dim_p"], 16);
    assert_eq!(d["rho_h"], "11/1");
    assert_eq!(v["status"], "pass");
}

#[test]
fn scalars_at_exceptional_point() {
    let v = json(&["scalars", "SO", "3", "Y0", "Y1", "--mu", "-1"]);
    assert_eq!(v["results"]["T"], "0/1");
    assert_eq!(v["results"]["lambda"], "1/1");
    assert_eq!(v["results"]["root_mu"], "-1/1");
}

#[test]
fn exceptional_lists_agree() {
    let v = json(&["exceptional", "Sp", "2", "--count", "3"]);
    assert_eq!(v["results"]["closed_form"], v["results"]["predicate_scan"]);
    assert_eq!(v["results"]["closed_form"][0], "-3/1");
}

#[test]
fn socle_reports_minimal_type() {
    let v = json(&["socle", "SU", "3", "--ell", "1"]);
    assert_eq!(v["results"]["minimal_ktype"], v["results"]["closed_form"]);
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["structure", "XX", "7"]).status.code(), Some(2));
    assert_eq!(run(&["tensor", "SO", "5", "Q3"]).status.code(), Some(2));
    assert_eq!(run(&["scalars", "SO", "5", "Y1", "Y4", "--mu", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "all", "--depth", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().all(|c| c["citation"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "11", "verify", "so-model", "--depth", "1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn csv_output() {
    let out = run(&["--format", "csv", "tensor", "SO", "5", "Y2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("command,check,citation,status,detail"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("tensor,")));
}

#[test]
fn out_flag_writes_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli_report.json");
    let _ = std::fs::remove_file(&path);
    let out = run(&["--out", path.to_str().unwrap(), "structure", "SU", "4"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["structural_data"]["m_alpha"], 6);
}
