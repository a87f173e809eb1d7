use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const CYCLE: &str = r#"{"field":"Q","n":3,"entries":[["0","1","0"],["0","0","1"],["1","0","0"]]}"#;
const SWAP: &str = r#"{"field":"Q","n":3,"entries":[["0","1","0"],["1","0","0"],["0","0","1"]]}"#;

fn affgebra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affgebra"))
        .args(args)
        .env_remove("AFFGEBRA_SEED")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_affgebra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
        .collect()
}

fn entries(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v["entries"].clone()).unwrap()
}

fn grid(rows: &[[&str; 3]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[test]
fn bracket_of_cycle_and_swap() {
    let out = affgebra(&["bracket", "--bracket", "commutator", CYCLE, SWAP]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(entries(v), grid(&[["1", "1", "-1"], ["1", "-1", "1"], ["-1", "1", "1"]]));
}

#[test]
fn retract_with_everything_equal_is_the_origin() {
    let out = affgebra(&["retract", "--bracket", "commutator", "-o", CYCLE, CYCLE, CYCLE]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(CYCLE).unwrap();
    assert_eq!(json_lines(&out)[0], v);
}

#[test]
fn dims_of_suna() {
    let out = affgebra(&["dims", "--class", "suna", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out), vec![Value::from(8)]);
}

#[test]
fn emit_matrix_inverse_and_refusal() {
    let out = affgebra(&["emit-matrix", "--which", "pinv", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        entries(&json_lines(&out)[0]),
        grid(&[["1/3", "1/3", "-2/3"], ["1/3", "-2/3", "1/3"], ["1/3", "1/3", "1/3"]])
    );
    let out = affgebra(&["emit-matrix", "--which", "pinv", "--n", "2", "--field", "GF", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_passes_and_streams_one_report_per_check() {
    let out = affgebra(&["verify", "--class", "sna", "--n", "2", "--trials", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = json_lines(&out);
    assert!(reports.len() > 20);
    assert!(reports.iter().all(|r| r["passed"] == Value::Bool(true)));
}

#[test]
fn verify_is_reproducible_from_the_environment() {
    let run = |seed_arg: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_affgebra"));
        cmd.args(["verify", "--class", "gna", "--n", "2", "--trials", "3", "--checks", "closure"]);
        if seed_arg {
            cmd.args(["--seed", "9"]).env_remove("AFFGEBRA_SEED");
        } else {
            cmd.env("AFFGEBRA_SEED", "9");
        }
        let mut v: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(run(true), run(false));
}

#[test]
fn invalid_characteristic_exits_two() {
    let out = affgebra(&["verify", "--class", "sna", "--n", "5", "--field", "GF", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invertible"));
    assert_eq!(affgebra(&["verify", "--class", "nope", "--n", "2"]).status.code(), Some(2));
    assert_eq!(affgebra(&["verify", "--class", "gna", "--n", "2", "--checks", "nope"]).status.code(), Some(2));
}

#[test]
fn iso_check_refuses_p_for_orthogonal() {
    let out = affgebra(&["iso-check", "--class", "ona", "--n", "2", "--via", "p"]);
    assert_eq!(out.status.code(), Some(2));
    let out = affgebra(&["iso-check", "--class", "ona", "--n", "2", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines[0]["via"], "U");
    assert_eq!(lines[1]["check"], "theorem-iso");
}

#[test]
fn corollary_and_sample() {
    let out = affgebra(&["corollary", "--class", "una", "--n", "2", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = affgebra(&["sample", "--class", "ga_c", "--c", "1/2", "--n", "2", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    for m in &lines {
        for row in entries(m) {
            let sum = row.iter().map(|e| {
                let (n, d) = e.split_once('/').unwrap_or((e, "1"));
                (n.parse::<i128>().unwrap(), d.parse::<i128>().unwrap())
            });
            let (num, den) = sum.fold((0i128, 1i128), |(a, b), (c, d)| (a * d + c * b, b * d));
            assert_eq!(2 * num, den, "row sums to 1/2");
        }
    }
}

#[test]
fn injected_fault_fails_and_replays() {
    let out = affgebra(&["verify", "--class", "gna", "--n", "2", "--trials", "5", "--checks", "closure", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let report = out.stdout.clone();
    let cx = &json_lines(&out)[0]["counterexample"];
    assert_eq!(cx["check"], "closure");

    let replayed = with_stdin(&["replay", "-"], &report);
    assert_eq!(replayed.status.code(), Some(1));
    assert_eq!(json_lines(&replayed)[0]["reproduced"], Value::Bool(true));

    // A report without a counterexample is not replayable input.
    let clean = affgebra(&["verify", "--class", "gna", "--n", "2", "--trials", "2", "--checks", "closure"]);
    assert_eq!(with_stdin(&["replay", "-"], &clean.stdout).status.code(), Some(2));
    assert_eq!(with_stdin(&["replay", "-"], b"not json").status.code(), Some(2));
}

#[test]
fn emit_matrix_round_trips_through_bracket() {
    // Bracket with itself is the identity on the input: [a,a] = a.
    let out = affgebra(&["emit-matrix", "--which", "u", "--n", "2"]);
    let u = String::from_utf8(out.stdout).unwrap();
    let again = affgebra(&["bracket", "--bracket", "commutator", u.trim(), u.trim()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(String::from_utf8(again.stdout).unwrap(), u);
}
