use std::process::Command;

use serde_json::Value;

fn gl2twist(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gl2twist")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn density_headline() {
    let (code, v, _) = gl2twist(&["density", "--q", "9", "--qprime", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["density"], "2/5");
    assert_eq!(v["command"], "density");
    assert!(v["citations"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn multiplicity_squarefree() {
    let (code, v, _) = gl2twist(&["multiplicity", "--q", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 1);
    assert_eq!(v["density"], "1/1");
}

#[test]
fn n0_at_49() {
    let (code, v, _) = gl2twist(&["n0", "--q", "49"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 3);
    assert_eq!(v["branch"], "nonsquarefree");
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["density", "--q", "9", "--qprime", "9"][..],
        &["n0", "--q", "10"],
        &["gamma1", "--p", "3", "--m", "2"],
        &["classes", "--p", "3", "--c", "3"],
        &["monomial", "--D", "4"],
        &["twist", "--rep", "{", "--omega", "{}"],
        &["gauss-sum", "--p", "2", "--m", "1", "--k", "0"],
    ] {
        let (code, v, _) = gl2twist(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"].is_string(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = gl2twist(&["nonsense"]);
    assert_eq!(code, 1);
    assert!(err.contains("Usage"));
    let (code, _, _) = gl2twist(&["density", "--q", "9"]);
    assert_eq!(code, 1);
}

#[test]
fn pretty_and_compact_agree() {
    let compact = Command::new(env!("CARGO_BIN_EXE_gl2twist")).args(["weyl", "--q", "9"]).output().unwrap();
    let pretty = Command::new(env!("CARGO_BIN_EXE_gl2twist")).args(["--pretty", "weyl", "--q", "9"]).output().unwrap();
    let a: Value = serde_json::from_slice(&compact.stdout).unwrap();
    let b: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    assert_eq!(a, b);
    assert_eq!(a["constant"], "5/12");
    assert!(pretty.stdout.len() > compact.stdout.len());
    // byte-identical across runs
    let again = Command::new(env!("CARGO_BIN_EXE_gl2twist")).args(["weyl", "--q", "9"]).output().unwrap();
    assert_eq!(compact.stdout, again.stdout);
}

#[test]
fn twist_round_trip() {
    let rep = r#"{"kind":"sc","central":{"p":5,"m":0,"k":0,"phase":"0/1","generic":false},"c":3,"sc_type":"I","dim_rho":4,"tag":"x"}"#;
    let omega = r#"{"p":5,"m":2,"k":5,"phase":"0/1","generic":false}"#;
    let (code, v, _) = gl2twist(&["twist", "--rep", rep, "--omega", omega]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["input_conductor"], 3);
    // the twisted representation parses back and can be twisted again
    let twisted = serde_json::to_string(&v["rep"]).unwrap();
    let (code, _, _) = gl2twist(&["twist", "--rep", &twisted, "--omega", omega]);
    assert_eq!(code, 0);
}

#[test]
fn every_command_reports_schema() {
    let runs: &[&[&str]] = &[
        &["gamma1", "--p", "3", "--m", "7"],
        &["classify", "--p", "7"],
        &["classes", "--p", "5", "--c", "2"],
        &["gauss-sum", "--p", "3", "--m", "2", "--k", "2"],
        &["monomial", "--D", "5", "--T", "6.5289"],
        &["audit", "--p", "5", "--mmax", "2"],
    ];
    for args in runs {
        let (code, v, _) = gl2twist(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["schema"], gl2twist::cli::SCHEMA);
        assert_eq!(v["command"], args[0]);
    }
    let (_, v, _) = gl2twist(&["gamma1", "--p", "3", "--m", "7"]);
    assert_eq!(v["bound"], 12);
    let (_, v, _) = gl2twist(&["classes", "--p", "5", "--c", "2"]);
    assert_eq!(v["sum_constants"], "19/1");
    assert_eq!(v["class_sums"]["invariant_total"], 14);
    let (_, v, _) = gl2twist(&["monomial", "--D", "5", "--T", "6.5289"]);
    assert_eq!(v["count_bound"], 3);
    assert_eq!(v["fundamental_unit"]["a"], "1");
    assert_eq!(v["spacing"], 6.52850260527);
    let (_, v, _) = gl2twist(&["audit", "--p", "5", "--mmax", "2"]);
    assert_eq!(v["discrepancies"], Value::Array(vec![]));
    let (_, v, _) = gl2twist(&["gauss-sum", "--p", "3", "--m", "2", "--k", "2"]);
    assert!((v["modulus_squared"].as_f64().unwrap() - 9.0).abs() < 1e-9);
}
