use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qosp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn nf_of_ef_has_three_terms() {
    let out = qosp(&["nf", "--generic", "e*f"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[2]["coeff"], "-1");
    assert_eq!(
        (terms[2]["a"].as_u64(), terms[2]["b"].as_u64()),
        (Some(1), Some(1))
    );
}

#[test]
fn nf_root_mode_uses_z() {
    let v = json_of(&qosp(&["nf", "--l", "3", "s"]));
    assert_eq!(v["terms"][0]["coeff"], "z^2");
}

#[test]
fn verify_centre_at_six() {
    let out = qosp(&["verify", "--l", "6", "--what", "centre"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let names: Vec<&str> = v["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["relation"].as_str().unwrap())
        .collect();
    for want in ["rel2", "rel3", "rel4"] {
        assert!(names.contains(&want), "{want} missing from {names:?}");
    }
    assert_eq!(v["pass"], true);
}

#[test]
fn classify_three_lists_all_dimensions() {
    let out = qosp(&["classify", "--l", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let mut ds: Vec<u64> = v["nilpotent"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["d"].as_u64().unwrap())
        .collect();
    ds.dedup();
    assert_eq!(ds, (1..=6).collect::<Vec<_>>());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--generic", "--seed", "3"][..],
        &["classify", "--l", "4"][..],
        &["verify", "--l", "5", "--output", "pretty"][..],
    ] {
        let a = qosp(args);
        let b = qosp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        qosp(&["nf", "--generic", "--bogus", "e"]).status.code(),
        Some(2)
    );
    assert_eq!(qosp(&["nf", "--l", "2", "e"]).status.code(), Some(2));
    assert_eq!(qosp(&["nf", "e"]).status.code(), Some(2));
    assert_eq!(qosp(&["nf", "--generic", "e^-1"]).status.code(), Some(2));
    let out = qosp(&["nf", "--generic", "e + ef"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
    assert_eq!(
        qosp(&["verify", "--generic", "--what", "centre"])
            .status
            .code(),
        Some(2)
    );
    let bad = qosp(&[
        "rep",
        "build",
        "--l",
        "3",
        "--family",
        "nilpotent",
        "--d",
        "2",
        "--lambda",
        "1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn cheb_and_rootdata() {
    let v = json_of(&qosp(&["cheb", "--family", "p", "--m", "4"]));
    assert_eq!(v["coeffs"], serde_json::json!([2, 0, 4, 0, 1]));
    let v = json_of(&qosp(&["rootdata", "--l", "10"]));
    assert_eq!(v["lprime"], 5);
    assert_eq!(v["L"], 10);
    assert_eq!(v["twice_odd"], true);
}

#[test]
fn rep_build_check_eval() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    let out = qosp(&[
        "rep", "build", "--l", "3", "--family", "mplus", "--lambda", "z", "--phi", "1", "--sigma",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&file, &out.stdout).unwrap();

    let check = qosp(&["rep", "check", path_arg(&file)]);
    assert_eq!(check.status.code(), Some(0));
    let v = json_of(&check);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["relations_pass"], true);
    assert_eq!(v["irreducible"], true);

    let s = "s*k - s^-1*k^-1 - (s + s^-1)*(q - q^-1)*f*e";
    let ev = json_of(&qosp(&["eval", "--l", "3", "--rep", path_arg(&file), s]));
    assert_eq!(ev["dim"], 6);
    assert_eq!(ev["matrix"][1][1], "-2");
    assert_eq!(ev["matrix"][0][0], "2");
    assert_eq!(
        qosp(&["eval", "--l", "4", "--rep", path_arg(&file), "e"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tampered_module_fails_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n.json");
    let out = qosp(&[
        "rep",
        "build",
        "--l",
        "4",
        "--family",
        "nilpotent",
        "--d",
        "3",
        "--lambda",
        "z^12",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["matrices"]["k"][0][0] = Value::String("7".into());
    std::fs::write(&file, v.to_string()).unwrap();
    let check = qosp(&["rep", "check", path_arg(&file)]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn corrupted_fixture_reports_both_sides() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let out = qosp(&[
        "verify",
        "--l",
        "4",
        "--what",
        "srel",
        "--write-fixture",
        path_arg(&good),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let rhs = v["relations"][0]["rhs"].as_str().unwrap().to_string();
    v["relations"][0]["rhs"] = Value::String(format!("-({rhs})"));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let out = qosp(&["verify", "--fixture", path_arg(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_of(&out);
    let first = &report["relations"][0];
    assert_eq!(first["pass"], false);
    assert!(first["lhs"].is_string() && first["rhs"].is_string());
}
