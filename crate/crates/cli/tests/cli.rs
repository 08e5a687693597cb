//! End-to-end tests of the binary: exit codes, report shape, JSON schema.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liouville"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn verify_family_passes_for_the_dihedral_case() {
    let out = run(&["verify-family", "223", "--x0", "1/2", "--order", "16"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("wronskian of normalized pair is identically 1"));
    assert!(text.contains("indicial certificate"));
    assert!(text.contains("sheet 2: d(alpha) = 0"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn verify_family_at_an_alternate_expansion_point() {
    let out = run(&["verify-family", "235", "--x0", "2", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("omega_1 ^ omega_2 = Omega"));
}

#[test]
fn unknown_family_tag_is_a_usage_error() {
    let out = run(&["verify-family", "999"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("999"));
}

#[test]
fn singular_expansion_point_is_rejected() {
    let out = run(&["verify-family", "223", "--x0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_accepts_the_shipped_sheet_file() {
    let out = run(&["check", &data("d3_sheet.txt")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("omega ^ Omega = 0"));
    assert!(text.contains("d(omega) = alpha ^ omega"));
    assert!(text.contains("d(alpha) = 0"));
}

#[test]
fn check_with_missing_alpha_defaults_to_zero() {
    // omega = dx is closed, so it passes with the implicit alpha = 0.
    let f = write_temp("omega_dx = 1\nOmega_dzdx = 1\n");
    let out = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn check_with_zero_omega_is_an_input_error() {
    let f = write_temp("omega_dx = 0\nOmega_dydz = 1\n");
    let out = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_failure_exits_one_with_a_witness() {
    // omega = dy does not annihilate Omega = dz^dx.
    let f = write_temp("omega_dy = 1\nOmega_dzdx = 1\n");
    let out = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn check_rejects_parse_garbage() {
    let f = write_temp("omega_dx = 1 +\nOmega_dydz = 1\n");
    let out = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_missing_file_is_an_input_error() {
    let out = run(&["check", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_facts_binary_tetrahedral() {
    let out = run(&["group-facts", "2T"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("24"));
    assert!(text.contains("12"));
    assert!(text.contains("none"));
}

#[test]
fn group_facts_dihedral_reports_the_cyclic_subgroup() {
    let out = run(&["group-facts", "D:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1: orders 6 (cyclic)"));
}

#[test]
fn group_facts_bad_tag_is_a_usage_error() {
    let out = run(&["group-facts", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("E8"));
}

#[test]
fn indicial_reports_the_reference_exponents() {
    let out = run(&["indicial", "223"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("{1/4, 3/4}"));
    assert!(text.contains("{1/3, 2/3}"));
    assert!(text.contains("obstruction verified"));
}

#[test]
fn conservation_prints_drift_numbers() {
    let out = run(&[
        "conservation",
        "223",
        "--start",
        "1/2,1,0",
        "--t-end",
        "1/10",
        "--dt",
        "1/100",
        "--truncation",
        "24",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("max drift"));
}

#[test]
fn conservation_outside_the_window_is_an_input_error() {
    let out = run(&[
        "conservation",
        "223",
        "--t-end",
        "2",
        "--dt",
        "1/100",
        "--truncation",
        "24",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("window"));
}

#[test]
fn json_output_matches_the_documented_schema() {
    let out = run(&["--json", "indicial", "233"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], serde_json::json!("indicial 233"));
    assert!(v["duration_ms"].is_u64());
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert!(c["pass"].is_boolean());
        assert!(c["witness"].is_string());
    }
}

#[test]
fn reports_are_deterministic_up_to_duration() {
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.starts_with("result:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&run(&["group-facts", "2O"])));
    let b = strip(stdout(&run(&["group-facts", "2O"])));
    assert_eq!(a, b);
    assert!(!a.is_empty());
}
