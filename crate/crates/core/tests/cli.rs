use std::path::Path;
use std::process::{Command, Output};

use logsum::harness::SuiteReport;

fn logsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logsum")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn clean_suite_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = logsum(&[
        "check", "--suite", "scalar_log_sum", "--trials", "500", "--seed", "42", "--dim", "8", "--report", path(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = SuiteReport::read(&report).unwrap();
    assert_eq!((r.trials, r.violations, r.config.seed), (500, 0, 42));
}

#[test]
fn violations_exit_one_and_replay_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("t10.json");
    let out = logsum(&[
        "check", "--suite", "theorem10_2", "--trials", "400", "--seed", "1", "--dim", "3", "--m", "4", "--report", path(&report),
    ]);
    assert_eq!(code(&out), 1);
    let r = SuiteReport::read(&report).unwrap();
    assert!(r.violations > 0 && !r.findings.is_empty());

    let out = logsum(&["replay", "--report", path(&report)]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gap"].as_f64().unwrap().to_bits(), r.worst_gap.to_bits());
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(code(&logsum(&["check", "--suite", "no_such_suite"])), 2);
    assert_eq!(code(&logsum(&["check", "--suite", "lemma9", "--dim", "65"])), 2);
    assert_eq!(code(&logsum(&["check", "--suite", "lemma9", "--tol", "-1"])), 2);
    assert_eq!(code(&logsum(&["check"])), 2);
    assert_eq!(code(&logsum(&["search", "--mode", "expansive", "--trials", "1"])), 2);
    assert_eq!(code(&logsum(&["eval", "--op", "q_log", "--input", "/nonexistent.json"])), 2);
}

#[test]
fn search_emits_findings_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("s.json");
    let out = logsum(&[
        "search", "--mode", "contractive", "--trials", "2000", "--seed", "3", "--dim", "3", "--m", "2", "--report", path(&report),
    ]);
    assert_eq!(code(&out), 0);
    let r = SuiteReport::read(&report).unwrap();
    assert_eq!(r.mode, "contractive");
    assert_eq!(r.findings_total, r.violations);
    assert_eq!(r.findings.len() as u64, r.findings_total.min(100));
    assert!(r.counters.contains_key("candidates"));
}

#[test]
fn eval_reads_exchange_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    std::fs::write(
        &input,
        r#"{"a": {"n": 2, "re": [[2, 0], [0, 1]], "im": [[0, 0], [0, 0]]},
            "b": {"n": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]},
            "tol": 1e-9}"#,
    )
    .unwrap();
    let out = logsum(&["eval", "--op", "loewner_leq", "--input", path(&input)]);
    assert_eq!(code(&out), 1, "I <= diag(2, 1) is true but diag(2, 1) <= I is not");
    let out = logsum(&["eval", "--op", "psd_sqrt", "--input", path(&input)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["result"]["re"][0][0].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(code(&logsum(&["eval", "--op", "bogus", "--input", path(&input)])), 2);
}

#[test]
fn list_names_every_suite() {
    let out = logsum(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in logsum::harness::suite_names() {
        assert!(text.contains(name));
    }
}
