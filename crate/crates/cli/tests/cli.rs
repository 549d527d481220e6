use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn arcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcurve"))
        .args(args)
        .env_remove("AR_CURVE_SEED")
        .output()
        .expect("spawn arcurve")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arcurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn ring_info_carries_envelope() {
    let inst1 = fixture("inst1.cfg");
    let out = arcurve(&["ring-info", inst1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "ring-info");
    assert_eq!(v["spec_hash"].as_str().unwrap().len(), 64);
    assert_eq!(v["spec"]["f"], "y");
    assert_eq!(v["result"]["branches"].as_array().unwrap().len(), 2);
}

#[test]
fn same_spec_and_seed_give_identical_bytes() {
    let inst1 = fixture("inst1.cfg");
    let args = ["--seed", "7", "decompose", inst1.to_str().unwrap(), "--module", "push"];
    let a = arcurve(&args);
    let b = arcurve(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn seed_falls_back_to_environment() {
    let inst2 = fixture("inst2.cfg");
    let out = Command::new(env!("CARGO_BIN_EXE_arcurve"))
        .args(["ring-info", inst2.to_str().unwrap()])
        .env("AR_CURVE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 11);
}

#[test]
fn verify_suites_exit_codes() {
    let inst1 = fixture("inst1.cfg");
    let inst2 = fixture("inst2.cfg");
    let (i1, i2) = (inst1.to_str().unwrap(), inst2.to_str().unwrap());
    for (suite, spec, code) in [
        ("main-theorem", i1, 0),
        ("main-theorem", i2, 0),
        ("trace-oracle", i2, 0),
        ("syz-gamma", i2, 0),
        ("tube-example", i1, 0),
        // E6 has finitely many indecomposables
        ("tube-example", i2, 1),
    ] {
        let out = arcurve(&["verify", suite, spec]);
        assert_eq!(out.status.code(), Some(code), "{suite} on {spec}");
        assert_eq!(json(&out)["pass"], code == 0, "{suite} on {spec}");
    }
}

#[test]
fn syz_gamma_rejects_reducible_ring() {
    let inst1 = fixture("inst1.cfg");
    let out = arcurve(&["verify", "syz-gamma", inst1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"], "input");
    assert!(v["message"].as_str().unwrap().contains("not a domain"));
}

#[test]
fn missing_ideal_is_an_input_error() {
    let path = scratch("no_ideal.cfg");
    std::fs::write(&path, "p = 3\nq = 4\n").unwrap();
    let out = arcurve(&["explore", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing m, n"));
}

#[test]
fn bad_config_reports_line() {
    let path = scratch("bad_weights.cfg");
    std::fs::write(&path, "p = 2\nq = 4\nm = 1\nn = 2\n").unwrap();
    let out = arcurve(&["ring-info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn explore_finds_tube_and_writes_dot() {
    let inst1 = fixture("inst1.cfg");
    let report = scratch("explore.json");
    let out = arcurve(&[
        "explore",
        inst1.to_str().unwrap(),
        "--depth",
        "3",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    let dot = std::fs::read_to_string(report.with_extension("dot")).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("tau I"));
}

#[test]
fn explore_dot_format_on_stdout() {
    let inst1 = fixture("inst1.cfg");
    let out = arcurve(&["--format", "dot", "explore", inst1.to_str().unwrap(), "--depth", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn finite_type_instance_has_no_tube() {
    let inst2 = fixture("inst2.cfg");
    let out = arcurve(&["explore", inst2.to_str().unwrap(), "--depth", "3"]);
    assert_eq!(out.status.code(), Some(1));
}
