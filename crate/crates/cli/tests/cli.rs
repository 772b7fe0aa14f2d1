//! End-to-end tests of the `evcount` binary: output schemas, golden
//! bytes, determinism, and the one-diagnostic-line error contract.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const DOC: &str = r#"{ "u": "0.1", "phase_radius": "1",
  "amplitudes": { "cartesian": [[0.6, 0.0], [0.8, 0.0]] } }
"#;

fn write_doc(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn evcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = evcount(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty(), "success must keep stderr empty");
    String::from_utf8(out.stdout).unwrap()
}

fn expect_single_diagnostic(args: &[&str]) -> String {
    let out = evcount(args);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty(), "error paths must not write stdout");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1, "expected one line, got: {stderr}");
    stderr
}

#[test]
fn quantize_golden_csv() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["quantize", "--input", &doc]);
    assert_eq!(
        csv,
        "x,modulus,count\n\
         0,6.000000000000e-1,38\n\
         1,8.000000000000e-1,50\n"
    );
}

#[test]
fn quantize_u_flag_overrides_document() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["quantize", "--input", &doc, "--u", "0.01"]);
    assert!(csv.contains("0,6.000000000000e-1,377\n"));
    assert!(csv.contains("1,8.000000000000e-1,503\n"));
}

#[test]
fn prob_compares_event_and_born_weights() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["prob", "--input", &doc]);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x,p_event,p_born,abs_diff");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "0");
    assert!((row[1].parse::<f64>().unwrap() - 0.3661257606).abs() < 1e-9);
    assert!((row[2].parse::<f64>().unwrap() - 0.36).abs() < 1e-12);
    assert!((row[3].parse::<f64>().unwrap() - 6.125760649e-3).abs() < 1e-12);
}

#[test]
fn prob_exact_column_holds_reduced_rationals() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["prob", "--input", &doc, "--exact"]);
    assert!(csv.starts_with("x,p_event,p_born,abs_diff,p_event_exact\n"));
    assert!(csv.contains(",361/986\n"));
    assert!(csv.contains(",625/986\n"));
}

#[test]
fn prob_product_mode_matches_stationary_for_one_census() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let stationary = stdout_of(&["prob", "--input", &doc, "--mode", "stationary"]);
    let product = stdout_of(&["prob", "--input", &doc, "--mode", "product"]);
    assert_eq!(stationary, product);
}

#[test]
fn converge_emits_one_row_per_unit() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["converge", "--input", &doc, "--u", "0.1,0.01,0.001"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "u,linf_error,l1_error,total_states,total_events");
    assert_eq!(lines.len(), 4);
    let linf: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(linf[0] > linf[1] && linf[1] > linf[2]);
    // round-trippable integer columns
    assert!(lines[3].ends_with(",8797,39483629"));
}

#[test]
fn converge_without_flag_uses_document_unit() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let csv = stdout_of(&["converge", "--input", &doc]);
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("1.000000000000e-1,"));
}

#[test]
fn sample_report_document_shape() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let text = stdout_of(&["sample", "--input", &doc, "--n", "10000", "--seed", "7"]);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["n_samples"], 10000);
    let tallies = report["tallies"].as_object().unwrap();
    let total: u64 = tallies.values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(total, 10000);
    assert!(report["empirical"]["0"].as_f64().unwrap() > 0.0);
    assert!(report["max_abs_deviation"].as_f64().unwrap() < 0.05);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    for args in [
        vec!["converge", "--input", &doc, "--u", "0.1,0.01"],
        vec!["sample", "--input", &doc, "--n", "70000", "--seed", "3"],
        vec!["prob", "--input", &doc, "--exact"],
        vec!["mobius"],
    ] {
        assert_eq!(stdout_of(&args), stdout_of(&args), "args: {args:?}");
    }
}

#[test]
fn output_flag_writes_file_and_keeps_streams_silent() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let out_path = dir.path().join("out.csv");
    let out = evcount(&["quantize", "--input", &doc, "--output", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.starts_with("x,modulus,count\n"));
}

#[test]
fn mobius_report_lists_factors_and_cancellation() {
    let text = stdout_of(&["mobius"]);
    assert!(text.contains("k=0 factor=+1\n"));
    assert!(text.contains("k=1 factor=-1\n"));
    assert!(text.contains("k=16 factor=+1\n"));
    assert_eq!(text.matches("cancelled").count(), 16);
    assert!(!text.contains("NOT CANCELLED"));
    assert!(text.ends_with("superposition of unit modulus over loops [1, 2]: 0\n"));
}

#[test]
fn degenerate_discretization_diagnostic() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(
        &dir,
        "zero.json",
        r#"{ "u": "1", "amplitudes": { "cartesian": [[0.0, 0.0]] } }"#,
    );
    let stderr = expect_single_diagnostic(&["quantize", "--input", &doc]);
    assert!(stderr.contains("degenerate discretization"), "got: {stderr}");
}

#[test]
fn error_paths_print_one_diagnostic_line() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(&dir, "doc.json", DOC);
    let no_unit = write_doc(
        &dir,
        "nounit.json",
        r#"{ "amplitudes": { "cartesian": [[1.0, 0.0]] } }"#,
    );
    let malformed = write_doc(&dir, "bad.json", "{ not json");
    let missing = dir.path().join("missing.json");
    let missing = missing.to_str().unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["quantize", "--input", missing],
        vec!["quantize", "--input", &malformed],
        vec!["quantize", "--input", &no_unit],
        vec!["quantize", "--input", &doc, "--u", "0.1,0.01"],
        vec!["converge", "--input", &doc, "--u", "0.01,0.1"],
        vec!["converge", "--input", &doc, "--u", "0.1,abc"],
        vec!["sample", "--input", &doc, "--n", "0"],
        vec!["bogus"],
        vec!["sample", "--input", &doc],
    ];
    for args in cases {
        expect_single_diagnostic(&args);
    }
}

#[test]
fn polar_documents_are_accepted() {
    let dir = TempDir::new().unwrap();
    let doc = write_doc(
        &dir,
        "polar.json",
        r#"{ "u": "0.1", "phase_radius": "1",
             "amplitudes": { "polar": { "modulus": [0.6, 0.8], "phase": [0.0, 3.14] } } }"#,
    );
    let csv = stdout_of(&["quantize", "--input", &doc]);
    assert!(csv.contains("0,6.000000000000e-1,38\n"));
    assert!(Path::new(&doc).exists());
}
