//! End-to-end tests of the `qbraid` binary.

use qbraid::cli::parse_scalar_spec;
use serde_json::Value;
use std::process::{Command, Output};

fn qbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbraid"))
        .args(args)
        .env_remove("QBRAID_MAX_DEGREE")
        .output()
        .unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("elapsed_ms").expect("timing present");
            v
        })
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// Every string inside a JSON value.
fn strings(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| strings(x, out)),
        Value::Object(m) => m.values().for_each(|x| strings(x, out)),
        _ => {}
    }
}

#[test]
fn rep_verify_symbolic_passes() {
    let out = qbraid(&[
        "--json",
        "rep",
        "verify",
        "--n",
        "3",
        "--q",
        "q",
        "--lambda-prime",
        "1,1,1,1",
    ]);
    assert_eq!(code(&out), 0);
    let r = reports(&out);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["status"], "pass");
    assert_eq!(r[0]["payload"]["first_failure"], Value::Null);
}

#[test]
fn commutant_at_reducible_point_fails() {
    let out = qbraid(&[
        "--json",
        "irr",
        "commutant",
        "--n",
        "2",
        "--q",
        "1",
        "--lambda",
        "1,-1,1",
    ]);
    assert_eq!(code(&out), 1);
    let r = &reports(&out)[0];
    assert_eq!(r["status"], "fail");
    assert_eq!(r["payload"]["verdict"], "operator-reducible");
    assert!(r["payload"]["commutant_dim"].as_u64().unwrap() >= 2);
}

#[test]
fn identity_sweep_streams_one_report_per_n() {
    let out = qbraid(&["--json", "identities", "--id", "bin1q", "--max-n", "8"]);
    assert_eq!(code(&out), 0);
    let r = reports(&out);
    assert_eq!(r.len(), 9);
    for (n, rep) in r.iter().enumerate() {
        assert_eq!(rep["payload"]["n"], n);
        assert_eq!(rep["status"], "pass");
    }
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&qbraid(&["rep", "verify", "--n", "2", "--unknown"])), 3);
    assert_eq!(code(&qbraid(&["rep", "verify", "--n", "2", "--q", "0"])), 3);
    assert_eq!(code(&qbraid(&["rep", "verify", "--n", "2", "--q", "q-q"])), 3);
    assert_eq!(
        code(&qbraid(&["rep", "verify", "--n", "2", "--lambda", "1,1,2", "--q", "1"])),
        3
    );
    assert_eq!(code(&qbraid(&["rep", "verify"])), 3);
    assert_eq!(code(&qbraid(&["frobnicate"])), 3);
    assert_eq!(code(&qbraid(&["--help"])), 0);
}

#[test]
fn degree_cap_exits_4() {
    let out = Command::new(env!("CARGO_BIN_EXE_qbraid"))
        .args(["rep", "build", "--n", "4"])
        .env("QBRAID_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    let ok = Command::new(env!("CARGO_BIN_EXE_qbraid"))
        .args(["rep", "build", "--n", "4"])
        .env("QBRAID_MAX_DEGREE", "100")
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0);
}

#[test]
fn rep_build_golden() {
    let out = qbraid(&["--json", "rep", "build", "--n", "2", "--q", "q"]);
    assert_eq!(code(&out), 0);
    let golden: Value = serde_json::from_str(
        r#"{"command":"--json rep build --n 2 --q q","status":"pass","payload":{
            "d_matrix":[["1","0","0"],["0","1","0"],["0","0","q"]],
            "lambda":["q","1","1"],
            "lambda_canonical":[["1","0","0"],["0","q^-1","0"],["0","0","1"]],
            "n":2,"q":"q",
            "s_matrix":[["0","0","1"],["0","-1","0"],["q^-1","0","0"]],
            "sigma1":[["q","1+q","1"],["0","1","1"],["0","0","1"]],
            "sigma2":[["1","0","0"],["-1","1","0"],["1","-1-q","q"]]}}"#,
    )
    .unwrap();
    assert_eq!(reports(&out), vec![golden]);
}

#[test]
fn sl2_golden() {
    let out = qbraid(&["--json", "sl2", "--word", "s1 s2 s1"]);
    let golden: Value = serde_json::from_str(
        r#"{"command":"--json sl2 --word s1 s2 s1","status":"pass","payload":{"determinant":"1","matrix":[["0","1"],["-1","0"]]}}"#,
    )
    .unwrap();
    assert_eq!(reports(&out), vec![golden]);
}

#[test]
fn emitted_scalars_round_trip() {
    for args in [
        vec!["--json", "rep", "verify", "--n", "3", "--q", "q"],
        vec!["--json", "rep", "build", "--n", "2", "--q", "zeta(3)"],
        vec!["--json", "tw", "check", "--n", "5"],
        vec![
            "--json",
            "irr",
            "commutant",
            "--n",
            "2",
            "--q",
            "1",
            "--lambda",
            "1,-1,1",
        ],
    ] {
        let out = qbraid(&args);
        let mut all = Vec::new();
        for r in reports(&out) {
            strings(&r["payload"], &mut all);
        }
        let scalars: Vec<&String> = all.iter().filter(|s| parse_scalar_spec(s).is_ok()).collect();
        assert!(!scalars.is_empty());
        for s in scalars {
            assert_eq!(&parse_scalar_spec(s).unwrap().to_string(), s, "{args:?}");
        }
    }
}

#[test]
fn text_modes_render_matrices() {
    let pretty = String::from_utf8(qbraid(&["rep", "build", "--n", "2", "--q", "q"]).stdout).unwrap();
    assert!(pretty.contains("s_matrix:\n   0  0 1\n   0 -1 0\nq^-1  0 0\n"));
    let latex =
        String::from_utf8(qbraid(&["--format", "latex", "rep", "build", "--n", "2", "--q", "q"]).stdout).unwrap();
    assert!(latex.contains("sigma1:\nq & 1+q & 1 \\\\"));
}

#[test]
fn remaining_subcommands() {
    for (args, expected) in [
        (vec!["triangle", "--max-n", "4"], 0),
        (vec!["exp", "check", "--max-n", "4"], 0),
        (vec!["sym", "check", "--max-n", "4"], 0),
        (vec!["ferrand", "check", "--max-n", "4"], 0),
        (vec!["tw", "check", "--n", "3", "--lambda", "1,2,4"], 0),
        (vec!["tw", "check", "--n", "4", "--lambda", "1,2,3,6", "--d", "1"], 0),
        (vec!["irr", "burnside", "--n", "3", "--q", "1"], 0),
        (vec!["irr", "minors", "--n", "2", "--q", "1", "--lambda", "1,-1,1"], 1),
        (vec!["irr", "catalog", "--max-n", "3"], 0),
        (vec!["irr", "equiv", "--n", "2", "--q", "1", "--q2", "2"], 1),
        (vec!["irr", "equiv", "--n", "2", "--q", "2", "--q2", "2"], 0),
    ] {
        assert_eq!(code(&qbraid(&args)), expected, "{args:?}");
    }
}
