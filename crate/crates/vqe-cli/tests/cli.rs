//! Black-box checks of the installed binary: output routing, flag
//! aliases, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn vqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vqe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn scratch_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("vqe-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn point_prints_a_parseable_result_document() {
    let output = vqe(&["point", "--max-iter", "30", "--seed", "9"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let total = doc["total_energy"].as_f64().unwrap();
    let reference = doc["reference_total_energy"].as_f64().unwrap();
    assert!((total - reference).abs() < 1e-6);
    assert_eq!(doc["config"]["mapping"], "parity");
    assert_eq!(doc["config"]["tqr"], true);
    assert!(doc["trace"].as_array().unwrap().len() > 1);
}

#[test]
fn point_routes_json_and_trace_to_files() {
    let out = scratch_path("result.json");
    let trace = scratch_path("trace.csv");
    let output = vqe(&[
        "point",
        "--max-iter",
        "20",
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).is_empty());

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc["total_energy"].is_f64());
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert!(trace_text.starts_with("nfev,energy,stddev,p0"));
    std::fs::remove_file(&out).ok();
    std::fs::remove_file(&trace).ok();
}

#[test]
fn underscore_flag_values_are_accepted() {
    let output = vqe(&[
        "point",
        "--mapping",
        "jordan_wigner",
        "--ansatz",
        "efficient_su2",
        "--optimizer",
        "nelder_mead",
        "--initial-state",
        "hartree_fock",
        "--max-iter",
        "3",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["config"]["mapping"], "jordan-wigner");
    assert_eq!(doc["config"]["var_form"], "efficient-su2");
}

#[test]
fn explicit_initial_points_parse_as_number_lists() {
    let output = vqe(&[
        "point",
        "--initial-point",
        "0.1,-0.2,0.05",
        "--max-iter",
        "3",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["trace"][0]["parameters"][1].as_f64().unwrap(), -0.2);
}

#[test]
fn conflicting_reduction_requests_exit_with_a_configuration_error() {
    let output = vqe(&["point", "--tqr", "--mapping", "bravyi_kitaev"]);
    assert_eq!(output.status.code(), Some(1));
    let output = vqe(&["point", "--tqr", "--no-tqr"]);
    assert_eq!(output.status.code(), Some(1));
    let output = vqe(&["point", "--optimizer", "cobyla"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn scan_emits_the_curve_schema() {
    let output = vqe(&[
        "scan", "--from", "0.7", "--to", "0.8", "--step", "0.1", "--max-iter", "40",
    ]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "distance_angstrom,vqe_total_ha,reference_total_ha,nfev"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0.7,"));
    assert!(lines[2].starts_with("0.8,"));
}

#[test]
fn a_partially_failing_scan_exits_three_and_keeps_the_good_points() {
    // The first grid point sits below the nuclear-coincidence threshold
    // and fails; the second succeeds.
    let output = vqe(&[
        "scan",
        "--from",
        "1e-9",
        "--to",
        "0.74",
        "--step",
        "0.74",
        "--max-iter",
        "25",
    ]);
    assert_eq!(output.status.code(), Some(3));
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 2);
    let stderr = String::from_utf8(output.stderr.clone()).unwrap();
    assert!(stderr.contains("integrals"));
}

#[test]
fn identical_invocations_print_identical_bytes() {
    let args = ["point", "--seed", "12", "--max-iter", "25"];
    let a = vqe(&args);
    let b = vqe(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn help_lists_both_subcommands() {
    let output = vqe(&["--help"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("point"));
    assert!(text.contains("scan"));
}
