use std::f64::consts::PI;
use std::process::{Command, Output};

use lgbound_core::correlators::exact_qho_correlator;
use serde_json::Value;

fn lgbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgbound"))
        .args(args)
        .env_remove("LGBOUND_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = lgbound(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Parse a CSV body into a header and numeric rows.
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn exact_correlator_matches_closed_form() {
    let out = lgbound(&["correlator", "--state", "n=1", "--tau-count", "33"]);
    assert!(out.status.success());
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header, ["tau", "C", "C_classical", "q_pp"]);
    assert_eq!(rows.len(), 33);
    assert_eq!(rows[0][1], 1.0);
    for r in &rows {
        assert!((r[1] - exact_qho_correlator(1, r[0]).unwrap()).abs() < 1e-13);
    }
}

#[test]
fn three_term_correlator_is_a_cosine() {
    let out = lgbound(&["correlator", "--state", "n=1", "--approx", "three-term", "--tau-count", "17"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, rows) = table(&stdout(&out));
    for r in &rows {
        assert!((r[1] - 3.0 / PI * r[0].cos()).abs() < 1e-13);
    }
}

#[test]
fn three_term_fails_an_explicit_target() {
    let out = lgbound(&["correlator", "--approx", "three-term", "--truncation", "1e-3", "--tau-count", "9"]);
    assert_eq!(out.status.code(), Some(3));
    // The table is still written.
    assert!(stdout(&out).starts_with("tau,C"));
}

#[test]
fn ground_state_shows_no_violation() {
    let doc = json(&["lg", "--state", "n=0", "--tau-count", "64"]);
    let s = &doc["summary"];
    for flag in ["lg2_violated", "lg3_violated", "lg4_violated"] {
        assert_eq!(s[flag], Value::Bool(false), "{flag}");
    }
    assert_eq!(s["regime"], "I");
}

#[test]
fn first_excited_state_violates_lg3() {
    let doc = json(&["lg", "--state", "n=1", "--tau-count", "512"]);
    let s = &doc["summary"];
    assert_eq!(s["lg3_violated"], Value::Bool(true));
    assert!(s["min_lg3"].as_f64().unwrap() < -0.36);
}

#[test]
fn json_layout() {
    let doc = json(&["correlator", "--tau-count", "4"]);
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["config", "records", "summary"]);
    assert_eq!(doc["config"]["command"], "correlator");
    assert_eq!(doc["records"].as_array().unwrap().len(), 4);
    assert_eq!(doc["summary"]["records"], 4);
    assert!(doc["summary"]["columns"]["C"]["min"].is_number());
}

#[test]
fn parity_summary() {
    let doc = json(&["parity", "--ratio-count", "31", "--state", "q=0,sigma=1"]);
    let s = &doc["summary"];
    assert!((s["argmin_ratio"].as_f64().unwrap() - (2.0 / PI).sqrt()).abs() < 1e-6);
    assert!((s["min_lg2"].as_f64().unwrap() + 0.30244).abs() < 1e-5);
    assert!(s["state_lg2"].is_number());
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["scan-superposition", "--theta-count", "7", "--phi-count", "9", "--tau-count", "64"];
    let run = |extra: &[&str], env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_lgbound"));
        cmd.args(args).args(extra).env_remove("LGBOUND_THREADS");
        if let Some(v) = env {
            cmd.env("LGBOUND_THREADS", v);
        }
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let one = run(&["--threads", "1"], None);
    assert_eq!(one, run(&["--threads", "4"], None));
    assert_eq!(one, run(&[], Some("3")));
    assert_eq!(String::from_utf8(one).unwrap().lines().count(), 1 + 7 * 9);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"command": "correlator", "state": "n=2", "tau_count": 5}"#).unwrap();
    let path = config.to_str().unwrap();

    let out = lgbound(&["--config", path]);
    assert!(out.status.success());
    let (_, rows) = table(&stdout(&out));
    assert_eq!(rows.len(), 5);

    let out = lgbound(&["--config", path, "--tau-count", "9"]);
    let (_, rows) = table(&stdout(&out));
    assert_eq!(rows.len(), 9);
    assert!((rows[3][1] - exact_qho_correlator(2, rows[3][0]).unwrap()).abs() < 1e-13);
}

#[test]
fn output_file_and_format_from_extension() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = lgbound(&["correlator", "--tau-count", "3", "--output", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(doc["records"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["correlator", "--no-such-flag"][..],
        &["scan-superposition", "--system", "morse"],
        &["correlator", "--state", "n=12", "--approx", "exact"],
        &["correlator", "--lambda", "20"],
        &["parity", "--max-n", "3"],
        &[],
    ] {
        let out = lgbound(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"command": "lg", "colour": 1}"#).unwrap();
    assert_eq!(lgbound(&["--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lgbound(&["lg", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn missed_truncation_target_exits_three() {
    let out = lgbound(&["lg", "--approx", "series", "--cutoff", "5", "--truncation", "1e-3", "--tau-count", "16"]);
    assert_eq!(out.status.code(), Some(3));
    let out = lgbound(&["morse-lg", "--truncation", "1e-6", "--tau-count", "16"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.csv");
    let out = lgbound(&["correlator", "--tau-count", "3", "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(lgbound(&["--help"]).status.code(), Some(0));
    assert_eq!(lgbound(&["--version"]).status.code(), Some(0));
}
