use std::process::Command;

use kar2_cli::{emit_report, run_suite, small_multisets, Config, Format, Status, SCHEMA, SUITES};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kar2soergel"))
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run_suite("nope", &Config::default()).is_err());
    let out = bin().arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn config_is_validated() {
    let cfg = Config { n: 9, ..Config::default() };
    assert!(run_suite("frobenius", &cfg).is_err());
    let cfg = Config { sigma: Some("1,2".into()), k: Some(3), ..Config::default() };
    assert!(run_suite("grass", &cfg).is_err());
    let cfg = Config { sigma: Some("1,x".into()), ..Config::default() };
    assert!(cfg.validate().is_err());
    let cfg = Config { sigma: Some("1/2, -3".into()), ..Config::default() };
    assert_eq!(cfg.sigma_values().unwrap().len(), 2);
}

#[test]
fn grass_suite_passes_with_lee_parameters() {
    let r = run_suite("grass", &Config::default()).unwrap();
    assert!(r.passed);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!(r.checks.len(), 4);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    assert_eq!(r.checks[3].detail["dims"], serde_json::json!([1, 2, 4, 8, 16, 32, 64]));
}

#[test]
fn json_report_is_deterministic() {
    let cfg = Config { sigma: Some("1,1,-1".into()), ..Config::default() };
    let a = emit_report(&run_suite("colourings", &cfg).unwrap(), Format::Json);
    let b = emit_report(&run_suite("colourings", &cfg).unwrap(), Format::Json);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["suite"], "colourings");
    assert_eq!(v["config"]["sigma"], "1,1,-1");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c.get("millis").is_none()));
}

#[test]
fn text_report_has_a_line_per_check() {
    let r = run_suite("s4-examples", &Config::default()).unwrap();
    let text = emit_report(&r, Format::Text);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), r.checks.len() + 1);
    assert!(lines[..r.checks.len()].iter().all(|l| l.starts_with("PASS")));
    assert!(lines.last().unwrap().starts_with("s4-examples: 3 passed"));
}

#[test]
fn long_checks_are_skipped_by_default() {
    let r = run_suite("morita", &Config::default()).unwrap();
    assert!(r.passed);
    assert_eq!(r.count(Status::Skip), 1);
    assert_eq!(r.count(Status::Pass), 1);
}

#[test]
fn rainbow_suite_reports_the_printed_s9_word() {
    let r = run_suite("rainbow", &Config::default()).unwrap();
    assert!(!r.passed);
    let failing: Vec<&str> = r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.name.as_str()).collect();
    assert_eq!(failing, ["S9 cell obstruction, printed 27-letter word"]);
    let out = bin().args(["rainbow", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn binary_exit_code_tracks_report() {
    let out = bin().args(["frobenius", "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["grass", "--sigma", "-1,2", "--k", "1", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn suite_list_and_multisets() {
    assert_eq!(SUITES.len(), 7);
    // Multisets of size ≤ 2 over five values: 1 + 5 + 15.
    assert_eq!(small_multisets(2).len(), 21);
}
