//! CLI contract: exit status 0 when everything holds, 1 when a check fails
//! to hold, 2 on input errors; `check` emits CSV/JSON on stdout or to a file.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tscalc"))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("tscalc-cli-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn exit_zero_when_all_checks_hold() {
    let spec = temp_file(
        "ok.json",
        r#"{
            "timescale": {"integers": {"a": 0, "b": 5}},
            "functions": ["t^2"],
            "points": "all-scale-points",
            "checks": ["montgomery", "ostrowski_gruss"]
        }"#,
    );
    let output = bin()
        .args(["check", "--spec"])
        .arg(&spec)
        .args(["--format", "csv"])
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&spec);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("name,t,lhs,rhs,slack,holds\n"));
    assert_eq!(stdout.lines().count(), 1 + 12); // header + 6 points x 2 checks
}

#[test]
fn exit_one_when_a_check_fails_to_hold() {
    // With only two samples per dense segment the grid misses the interior
    // extremum of f^Δ = t - t², so the estimated derivative range collapses
    // and the right side is under-estimated: an honest holds=false, showing
    // why the range is a grid estimate rather than a certified bound.
    let spec = temp_file(
        "fail.json",
        r#"{
            "timescale": {"interval": {"a": 0, "b": 1}},
            "functions": ["t^2/2 - t^3/3"],
            "points": [0.25],
            "checks": ["ostrowski_gruss"],
            "tolerances": {"dense_samples": 2}
        }"#,
    );
    let output = bin()
        .args(["check", "--spec"])
        .arg(&spec)
        .output()
        .unwrap();
    let _ = std::fs::remove_file(&spec);
    assert_eq!(output.status.code(), Some(1), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("\"holds\":false"), "{stdout}");
}

#[test]
fn exit_two_on_input_errors() {
    let missing = bin()
        .args(["check", "--spec", "/nonexistent/scenario.json"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let spec = temp_file("bad.json", r#"{"timescale": {"interval": {"a": 0, "b": 1}}}"#);
    let malformed = bin().args(["check", "--spec"]).arg(&spec).output().unwrap();
    let _ = std::fs::remove_file(&spec);
    assert_eq!(malformed.status.code(), Some(2), "{malformed:?}");

    let spec = temp_file(
        "badpoint.json",
        r#"{
            "timescale": {"integers": {"a": 0, "b": 4}},
            "functions": ["t"],
            "points": [2.5],
            "checks": ["montgomery"]
        }"#,
    );
    let out_of_scale = bin().args(["check", "--spec"]).arg(&spec).output().unwrap();
    let _ = std::fs::remove_file(&spec);
    assert_eq!(out_of_scale.status.code(), Some(2), "{out_of_scale:?}");
}

#[test]
fn check_writes_output_file() {
    let spec = temp_file(
        "out.json",
        r#"{
            "timescale": {"qlattice": {"q": 2, "m": 0, "n": 2}},
            "functions": ["t"],
            "points": [2],
            "checks": ["ostrowski"]
        }"#,
    );
    let out = std::env::temp_dir().join(format!("tscalc-cli-{}-report.json", std::process::id()));
    let status = bin()
        .args(["check", "--spec"])
        .arg(&spec)
        .args(["--format", "json", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    let bytes = std::fs::read(&out).unwrap();
    let _ = std::fs::remove_file(&spec);
    let _ = std::fs::remove_file(&out);
    assert_eq!(status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(parsed[0]["name"], "ostrowski");
}

#[test]
fn replay_matches_fuzz_worst_trial() {
    let out = std::env::temp_dir().join(format!("tscalc-cli-{}-fuzz.json", std::process::id()));
    let status = bin()
        .args(["fuzz", "--seed", "11", "--trials", "50", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let _ = std::fs::remove_file(&out);
    let worst = summary["worst_trial"].as_u64().unwrap();
    let min_slack = summary["min_slack"].as_f64().unwrap();

    let output = bin()
        .args(["replay", "--seed", "11", "--trial", &worst.to_string()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let replay_min = reports
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["name"] != "montgomery")
        .map(|r| r["slack"].as_f64().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(replay_min, min_slack);
}
