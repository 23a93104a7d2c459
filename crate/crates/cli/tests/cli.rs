use std::process::{Command, Output};

use serde_json::Value;

fn picmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picmon"))
        .args(args)
        .output()
        .unwrap()
}

/// Parses a JSON report, checking the header sits alone on the first line.
fn report(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("{\"header\"") && first.contains("\"timestamp\""));
    assert_eq!(text.matches("\"timestamp\"").count(), 1);
    serde_json::from_str(&text).unwrap()
}

#[test]
fn synmon_of_even_length_words() {
    let out = picmon(&["synmon", "--regex", "(aa)*"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["command"], "synmon");
    assert_eq!(v["report"]["size"], 2);
    assert_eq!(v["report"]["aperiodic"], false);
    assert_eq!(v["header"]["tool"], "picmon");
}

#[test]
fn synmon_reads_an_automaton_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    // a*b* as a two-state partial automaton
    let nfa = serde_json::json!({
        "alphabet": 2,
        "states": 2,
        "initial": [0],
        "final": [0, 1],
        "delta": [[0, 0, 0], [0, 1, 1], [1, 1, 1]],
        "accepts_epsilon": true
    });
    std::fs::write(&path, nfa.to_string()).unwrap();
    let out = picmon(&["synmon", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = report(&out);
    assert_eq!(v["report"]["size"], 5);
    assert_eq!(v["report"]["aperiodic"], true);
}

#[test]
fn text_and_dot_formats() {
    let text = picmon(&["synmon", "--regex", "a*b*", "--format", "text"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.starts_with("# picmon "));
    let dot = picmon(&["synmon", "--regex", "a*b*", "--format", "dot"]);
    let s = String::from_utf8(dot.stdout).unwrap();
    assert!(s.trim_start().starts_with("digraph"));
}

#[test]
fn out_writes_a_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = picmon(&["witness", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "witness");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(picmon(&["verify", "nosuchsuite"]).status.code(), Some(2));
    assert_eq!(picmon(&["witness", "--n", "0"]).status.code(), Some(2));
    assert_eq!(picmon(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        picmon(&[
            "mso",
            "--formula",
            "(in a",
            "--blank",
            "1x1",
            "--attrs",
            "a"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn exceeding_a_cap_exits_with_three() {
    let out = picmon(&["synmon", "--regex", "(aa)*", "--cap-monoid", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn mso_assignments_are_one_based() {
    let out = picmon(&[
        "mso",
        "--formula",
        "(in a x)",
        "--blank",
        "1x2",
        "--attrs",
        "a",
        "--assign",
        "x=1,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["report"]["value"], false);
    let out = picmon(&[
        "mso",
        "--formula",
        "(top x)",
        "--blank",
        "2x2",
        "--assign",
        "x=1,2",
    ]);
    assert_eq!(report(&out)["report"]["value"], true);
    let out = picmon(&[
        "mso",
        "--formula",
        "(top x)",
        "--blank",
        "2x2",
        "--assign",
        "x=2,2",
    ]);
    assert_eq!(report(&out)["report"]["value"], false);
}

#[test]
fn blockprod_lists_and_checks_toys() {
    let list = picmon(&["blockprod", "--toy", "list"]);
    let names = String::from_utf8(list.stdout).unwrap();
    assert!(names.lines().any(|l| l == "one-mark-h1"));
    let out = picmon(&["blockprod", "--toy", "one-mark-h1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn single_suite_with_fixed_seed_is_reproducible() {
    let a = picmon(&["verify", "recdivide", "--seed", "7"]);
    let b = picmon(&["verify", "recdivide", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(report(&a)["report"], report(&b)["report"]);
}
