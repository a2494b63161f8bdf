//! End-to-end checks of the `laxg2` binary: exit codes, table flags and
//! fixture round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use laxg2::fixture::Fixture;
use laxg2::report::Report;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_laxg2"))
}

fn sample() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/sphere_111.json")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn non_orthogonal_alphas_exit_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "bad.json",
        r#"{"surface":{"genus":0,"P":["0"],"Q":["inf"],"tyurin":[{"gamma":"1","alpha1":["1","0","0"],"alpha2":["1","1","0"]}]},"grading":{"a":["1"],"b":"const:0"},"T":3}"#,
    );
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--suites", "g2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tyurin[0]"), "stderr: {err}");
}

#[test]
fn unknown_and_invalid_fields_exit_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write_config(
        dir.path(),
        "unknown.json",
        r#"{"surface":{"genus":0,"P":["0"],"Q":["inf"],"tyurin":[]},"grading":{"a":["1"],"b":"const:0"},"T":3,"extra":1}"#,
    );
    let small_t = write_config(
        dir.path(),
        "t.json",
        r#"{"surface":{"genus":0,"P":["0"],"Q":["inf"],"tyurin":[]},"grading":{"a":["1"],"b":"const:0"},"T":1}"#,
    );
    for cfg in [&unknown, &small_t] {
        let out = run(&["verify", "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{}", cfg.display());
    }
    let missing = run(&["verify", "--config", "/nonexistent/config.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_suite = run(&["verify", "--config", sample().to_str().unwrap(), "--suites", "g3"]);
    assert_eq!(bad_suite.status.code(), Some(2));
}

#[test]
fn passing_suite_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--config",
        sample().to_str().unwrap(),
        "--suites",
        "g2",
        "--trials",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["failed"], 0);
    assert!(report["records"].as_array().unwrap().len() >= 12);
}

#[test]
fn failing_check_exits_one() {
    // The sample surface has one point with N = 1, where dim L_0 = 15.
    let out = run(&[
        "verify",
        "--config",
        sample().to_str().unwrap(),
        "--suites",
        "grading",
        "--trials",
        "2",
        "--window",
        "0:0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let dim = report["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "grading.dimension.m+00")
        .unwrap();
    assert_eq!(dim["expected"], 14);
    assert_eq!(dim["actual"], 15);
    assert_eq!(dim["pass"], false);
}

#[test]
fn table_flags_cells_off_14n() {
    // With one point and N = 1 every degree carries the extra dimension.
    let out = run(&["table", "--config", sample().to_str().unwrap(), "--mrange", "-1:1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let table: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(table["expected_dim"], 14);
    let flagged: Vec<(i64, i64)> = table["dims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["flagged"] == true)
        .map(|c| (c["m"].as_i64().unwrap(), c["dim"].as_i64().unwrap()))
        .collect();
    assert_eq!(flagged, vec![(-1, 15), (0, 15), (1, 15)]);

    let text = run(&["table", "--config", sample().to_str().unwrap(), "--mrange", "-1:1"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("15"));
}

#[test]
fn fixture_round_trips_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = sample();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    for (path, seed) in [(&a, "1"), (&b, "1"), (&c, "2")] {
        let out = run(&["fixture", "--config", cfg.to_str().unwrap(), "--seed", seed, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ta, std::fs::read_to_string(&b).unwrap());

    let fa = Fixture::from_json(&ta).unwrap();
    assert_eq!(fa.to_json(), ta);
    let fc = Fixture::from_json(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_eq!(fa.bases, fc.bases);
    assert_eq!(fa.omega, fc.omega);
    assert_ne!(fa.jets, fc.jets);

    let replay = run(&["replay", "--fixture", a.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&replay.stdout).unwrap();
    assert!(report.all_passed());
    assert!(report.summary.total > 0);
}

#[test]
fn tampered_fixture_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    let out = run(&["fixture", "--config", sample().to_str().unwrap(), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut fix = Fixture::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let jet = &mut fix.jets[0].jet;
    let mut coeffs: Vec<_> = (jet.lo()..=jet.hi()).map(|n| jet.coeff(n).unwrap().clone()).collect();
    coeffs[0] = &coeffs[0] + &laxg2_core::g2::g2_basis()[0];
    *jet = laxg2_core::MatrixJet::new(jet.lo(), coeffs).unwrap();
    std::fs::write(&path, fix.to_json()).unwrap();
    let replay = run(&["replay", "--fixture", path.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(1));
}
