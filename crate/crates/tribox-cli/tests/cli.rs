//! End-to-end checks of the command-line surface: exit codes, file formats
//! and output determinism.

use std::process::{Command, Output};

fn tribox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tribox"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn usage_errors_exit_2() {
    let out = tribox(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tribox(&["box"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_exit_codes_follow_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let noise = dir.path().join("noise.json");
    let sv = dir.path().join("sv.json");
    assert!(tribox(&[
        "box",
        "--canonical",
        "noise",
        "--out",
        noise.to_str().unwrap()
    ])
    .status
    .success());
    assert!(tribox(&[
        "box",
        "--canonical",
        "sv:0000",
        "--out",
        sv.to_str().unwrap()
    ])
    .status
    .success());
    let inside = tribox(&["member", "--set", "l", "--in", noise.to_str().unwrap()]);
    assert_eq!(inside.status.code(), Some(0));
    let outside = tribox(&["member", "--set", "l2", "--in", sv.to_str().unwrap()]);
    assert_eq!(outside.status.code(), Some(3));
    let stdout = String::from_utf8(outside.stdout).unwrap();
    assert!(stdout.contains("svetlichny"));
}

#[test]
fn measure_reports_the_extremal_values() {
    let out = tribox(&["measure", "--canonical", "sv:0000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("G = 8.000000000000"));
    assert!(text.contains("Q = 0.000000000000"));
    let out = tribox(&["measure", "--canonical", "mermin-mm:3", "--report"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["q"].as_f64().unwrap(), 4.0);
    assert_eq!(v["g_values"].as_array().unwrap().len(), 9);
}

#[test]
fn quantum_boxes_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.json");
    let out = tribox(&[
        "quantum",
        "--state",
        "gghz",
        "--theta",
        "0.5",
        "--settings",
        "sd_xy",
        "--emit",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let measured = tribox(&["measure", "--in", path.to_str().unwrap()]);
    assert!(measured.status.success());
    let text = String::from_utf8(measured.stdout).unwrap();
    // G = 8 sin(2θ)/sqrt2 at θ = 0.5.
    let expect = 8.0 * (1.0f64).sin() / 2.0f64.sqrt();
    let line = text.lines().find(|l| l.starts_with("G = ")).unwrap();
    let got: f64 = line.trim_start_matches("G = ").parse().unwrap();
    assert!((got - expect).abs() < 1e-9);
}

#[test]
fn decompose_reports_weights_for_boxes_in_r() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.json");
    assert!(tribox(&[
        "box",
        "--mix",
        "0.6:sv:0000,0.2:mermin-mm:0,0.2:noise",
        "--out",
        path.to_str().unwrap(),
    ])
    .status
    .success());
    let out = tribox(&["decompose", "--in", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(v["mu"].as_f64().unwrap() > 0.5);
    // A class-8 box lies outside R.
    let c8 = dir.path().join("c8.json");
    assert!(tribox(&[
        "box",
        "--canonical",
        "class8",
        "--out",
        c8.to_str().unwrap()
    ])
    .status
    .success());
    let out = tribox(&["decompose", "--in", c8.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reproduce_output_is_deterministic() {
    let args = [
        "reproduce",
        "monogamy-scan",
        "--grid",
        "4",
        "--samples",
        "200",
        "--seed",
        "11",
        "--format",
        "csv",
    ];
    let a = tribox(&args);
    let b = tribox(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reproduce_verdicts_match_the_acceptance_outcomes() {
    let ok = tribox(&["reproduce", "werner-sweep", "--grid", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    let failing = tribox(&["reproduce", "cqqc-null", "--samples", "12", "--seed", "3"]);
    assert_eq!(failing.status.code(), Some(3));
}

#[test]
fn scenario_files_drive_the_quantum_command() {
    let dir = tempfile::tempdir().unwrap();
    let sc = dir.path().join("scenario.json");
    std::fs::write(
        &sc,
        r#"{"state":{"family":"werner","p":0.5},"settings":{"name":"md_xy"}}"#,
    )
    .unwrap();
    let out = tribox(&["quantum", "--scenario", sc.to_str().unwrap(), "--measure"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Q = 2.000000000000"), "{text}");
}
