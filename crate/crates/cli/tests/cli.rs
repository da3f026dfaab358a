//! End-to-end tests of the command-line interface, including exit codes
//! and byte-determinism of the emitted artifacts.

use std::process::{Command, Output};

fn mckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mckay(args);
    assert!(
        out.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn mckay_icosa_is_e8() {
    let dot = stdout(&["mckay", "icosa", "--format", "dot"]);
    assert_eq!(dot.matches("label=").count(), 9);
    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["mckay", "icosa", "--format", "json"])).unwrap();
    assert_eq!(js["affine_type"], "E~8");
    assert_eq!(js["delta"], serde_json::json!([1, 2, 2, 3, 3, 4, 4, 5, 6]));
}

#[test]
fn group_json_schema() {
    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["group", "dihedral:2", "--format", "json"])).unwrap();
    assert_eq!(js["schema"], 1);
    assert_eq!(js["order"], 8);
    assert_eq!(js["characters"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_an_suite_passes() {
    let out = mckay(&["verify", "cyclic:3", "--suite", "an"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn verify_tetra_all_passes() {
    let out = mckay(&["verify", "tetra", "--suite", "all"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all passed"));
}

#[test]
fn parse_failure_exits_2() {
    let out = mckay(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mckay(&["group"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    let out = mckay(&["group", "nosuchgroup"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mckay(&["verify", "cyclic:2", "--suite", "nosuchsuite"]);
    assert_eq!(out.status.code(), Some(1));
    // Parity violation in the object spec.
    let out = mckay(&["phi", "cyclic:2", "--object", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["group", "octa", "--format", "json"],
        vec!["roots", "dihedral:3", "--level", "2", "--bound", "3"],
        vec!["homdims", "tetra", "--window", "0", "4"],
        vec!["rphi", "octa", "--height", "std", "--format", "json"],
        vec!["arquiver", "cyclic:2", "--window", "-2", "2"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "{:?}", args);
        assert!(!a.is_empty());
    }
}

#[test]
fn heights_roundtrip() {
    let js: serde_json::Value = serde_json::from_str(&stdout(&[
        "heights",
        "cyclic:2",
        "--from",
        "std",
        "--to",
        "0=2,1=0,2=1,3=1",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(js["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn phi_object_json() {
    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["phi", "cyclic:1", "--object", "0,2"])).unwrap();
    assert_eq!(js["dims"], serde_json::json!([3, 2]));
}

#[test]
fn max_order_env_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(["group", "cyclic:4"])
        .env("MCKAY_LAB_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds"));
}
