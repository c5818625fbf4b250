use std::fs;
use std::process::Command;

use gradzeta::{main_with_args, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut full = vec!["gradzeta", "-q"];
    full.extend_from_slice(args);
    let mut out = Vec::new();
    let code = main_with_args(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn zeta_both_modes_agree() {
    let (code, v) = json(&["zeta", "--c", "4", "--p", "5", "--mode", "both"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "zeta");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["match"], true);
    assert_eq!(v["closed"], v["enumerated"]);
}

#[test]
fn symbolic_class_two() {
    let (code, out) = run(&["zeta", "--c", "2", "--symbolic"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1 + (p+1)t + t^2 + t^3");
}

#[test]
fn csv_has_fixed_header() {
    let (code, out) = run(&[
        "--format", "csv", "zeta", "--c", "3", "--p", "3", "--mode", "both",
    ]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("codim,closed,enumerated"));
    assert_eq!(lines.next(), Some("0,1,1"));
    assert_eq!(lines.next(), Some("1,4,4"));
}

#[test]
fn coefficient_by_profile() {
    let (code, v) = json(&["coeff", "--c", "4", "--p", "2", "--codim", "8"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["results"][0]["count"], "1");
    assert_eq!(v["results"][0]["reference"], "1");
    let (code, out) = run(&["coeff", "--c", "6", "--p", "7", "--profile", "0,0,0,1,4,9"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("162450"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["zeta", "--c", "3", "--p", "9"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["zeta", "--c", "6", "--p", "3", "--mode", "enum"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["zeta", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["--budget", "100", "zeta", "--c", "5", "--p", "7", "--mode", "enum"]).0,
        EXIT_BUDGET
    );
    assert_eq!(run(&["gamma", "--n", "4", "--order"]).0, EXIT_MISMATCH);
    assert_eq!(run(&["gamma", "--n", "5", "--order"]).0, EXIT_OK);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_gradzeta");
    let ok = Command::new(bin)
        .args(["-q", "zeta", "--c", "3", "--p", "5", "--mode", "both"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("match"));
    let bad = Command::new(bin)
        .args(["-q", "zeta", "--c", "3", "--p", "4"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn checkpoint_resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("run.ndjson");
    let log = log.to_str().unwrap();
    let args = [
        "--format",
        "json",
        "--threads",
        "2",
        "zeta",
        "--c",
        "5",
        "--p",
        "5",
        "--mode",
        "both",
    ];
    let (code, fresh) = run(&args);
    assert_eq!(code, EXIT_OK);

    let mut with_log = vec!["--checkpoint", log];
    with_log.extend_from_slice(&args);
    let (code, first) = run(&with_log);
    assert_eq!(code, EXIT_OK);
    assert_eq!(first, fresh);
    let lines: Vec<String> = fs::read_to_string(log)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert!(lines.len() > 2);
    for l in &lines {
        let r: Value = serde_json::from_str(l).unwrap();
        assert_eq!(r["task"], "zeta");
        assert_eq!(r["prime"], 5);
        assert!(r["cell_range"].is_array() && r["partial_counts"].is_object());
    }

    // keep half the records, as if the run had been interrupted
    fs::write(log, lines[..lines.len() / 2].join("\n") + "\n").unwrap();
    let (code, resumed) = run(&with_log);
    assert_eq!(code, EXIT_OK);
    assert_eq!(resumed, fresh);
    assert_eq!(
        fs::read_to_string(log).unwrap().lines().count(),
        lines.len()
    );

    // a fully logged run does no new work
    let (_, again) = run(&with_log);
    assert_eq!(again, fresh);
    assert_eq!(
        fs::read_to_string(log).unwrap().lines().count(),
        lines.len()
    );
}

#[test]
fn corrupt_checkpoint_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("bad.ndjson");
    fs::write(&log, "{not json\n").unwrap();
    let code = run(&[
        "--checkpoint",
        log.to_str().unwrap(),
        "zeta",
        "--c",
        "3",
        "--p",
        "5",
        "--mode",
        "enum",
    ])
    .0;
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn threads_do_not_change_results() {
    let one = run(&[
        "--format",
        "json",
        "--threads",
        "1",
        "coeff",
        "--c",
        "6",
        "--p",
        "5",
        "--codim",
        "9",
    ]);
    let three = run(&[
        "--format",
        "json",
        "--threads",
        "3",
        "coeff",
        "--c",
        "6",
        "--p",
        "5",
        "--codim",
        "9",
    ]);
    assert_eq!(one, three);
}

#[test]
fn scan_reports_unconfirmed_fits() {
    let (code, v) = json(&[
        "scan", "--task", "onestep", "--c", "3", "--primes", "5,7", "--deg", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["uniform"], true);
    assert_eq!(v["confirmed"], false);
    let (code, v) = json(&[
        "scan", "--task", "onestep", "--c", "3", "--primes", "5..20", "--deg", "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["confirmed"], true);
    assert_eq!(
        run(&["scan", "--task", "onestep", "--c", "3", "--primes", "5", "--deg", "1"]).0,
        EXIT_USAGE
    );
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "table1", "--p", "7"][..],
        &["verify", "prop1", "--n", "4", "--p", "11"],
        &["verify", "thm1", "--n", "5", "--p", "13"],
        &["verify", "kernel", "--n", "6", "--p", "11"],
        &["verify", "fk", "--k", "3", "--p", "5"],
        &["verify", "alpha2", "--k", "1", "--p", "7"],
        &["verify", "g", "--d", "4", "--p", "3"],
    ] {
        assert_eq!(run(args).0, EXIT_OK, "{args:?}");
    }
}
