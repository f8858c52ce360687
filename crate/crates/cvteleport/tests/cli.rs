//! End-to-end tests of the command-line interface: output formats, exit
//! codes and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cvteleport"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("cvteleport-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn epr_single_value() {
    let out = run(&["epr", "--kind", "tmsv", "--lambda", "0.5"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn epr_with_oracle() {
    let out = run(&["epr", "--kind", "padd", "--lambda", "0", "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("closed_form: 3.0000000000000000e0"), "{text}");
    assert!(text.contains("fock_oracle(cutoff=200)"), "{text}");
    assert!(text.contains("discrepancy"), "{text}");
}

#[test]
fn epr_domain_violation_exits_2() {
    let out = run(&["epr", "--kind", "tmsv", "--lambda", "1.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn epr_insufficient_cutoff_exits_3() {
    let out = run(&["epr", "--kind", "padd", "--lambda", "0.9", "--oracle", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fidelity_ideal_value() {
    let out = run(&["fidelity", "--kind", "psub", "--lambda", "0.5", "--ideal"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fidelity: 8.4375000000000000e-1"), "{text}");
    assert!(text.contains("beats_no_cloning: true"), "{text}");
}

#[test]
fn fidelity_classical_limit() {
    let out = run(&[
        "fidelity", "--kind", "tmsv", "--lambda", "0", "--g", "1", "--r2", "0", "--tau", "0",
        "--nth", "0", "--alpha", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fidelity: 5.0000000000000000e-1"), "{text}");
    assert!(text.contains("beats_classical: false"), "{text}");
}

#[test]
fn fidelity_verify_reports_small_discrepancy() {
    let out = run(&[
        "fidelity", "--kind", "padd", "--lambda", "0.5", "--r2", "0.5", "--tau", "0.5", "--verify",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let disc_line = text
        .lines()
        .find(|l| l.starts_with("discrepancy:"))
        .expect("discrepancy line");
    let disc: f64 = disc_line
        .split_whitespace()
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(disc < 1e-6, "{disc_line}");
}

#[test]
fn sweep_csv_file_round_trips() {
    let path = tmp_path("fig4.csv");
    let out = run(&[
        "sweep",
        "--quantity",
        "ideal-fidelity",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0.99",
        "--steps",
        "100",
        "--kinds",
        "tmsv,psub,padd",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("wrote 100 rows"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'), "LF line endings only");
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "lambda,tmsv,psub,padd");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    // 17 significant digits round-trip exactly
    let first_cells: Vec<f64> = rows[0].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first_cells, vec![0.0, 0.5, 0.5, 0.25]);
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_is_byte_deterministic() {
    let args = [
        "sweep",
        "--quantity",
        "fidelity",
        "--var",
        "tau",
        "--lo",
        "0",
        "--hi",
        "3",
        "--steps",
        "40",
        "--lambda",
        "0.5",
        "--r2",
        "0.5",
        "--alpha",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    // the tau sweep declines over the full window for every kind
    let text = stdout(&a);
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    let last: Vec<f64> = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    for col in 1..4 {
        assert!(last[col] < first[col]);
    }
}

#[test]
fn sweep_json_matches_csv_numerically() {
    let csv_path = tmp_path("table.csv");
    let json_path = tmp_path("table.json");
    let base = [
        "sweep",
        "--quantity",
        "epr-variance",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0.9",
        "--steps",
        "10",
    ];
    let out = run(&[&base[..], &["--out", csv_path.to_str().unwrap()]].concat());
    assert!(out.status.success());
    let out = run(&[
        &base[..],
        &["--out", json_path.to_str().unwrap(), "--format", "json"],
    ]
    .concat());
    assert!(out.status.success());

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let records = json.as_array().unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(records.len(), 9 + 1);
    for (line, record) in lines.zip(records) {
        for (key, cell) in header.iter().zip(line.split(',')) {
            let from_csv: f64 = cell.parse().unwrap();
            let from_json = record[*key].as_f64().unwrap();
            assert_eq!(from_csv, from_json, "{key}");
        }
    }
    std::fs::remove_file(&csv_path).ok();
    std::fs::remove_file(&json_path).ok();
}

#[test]
fn sweep_usage_errors_exit_2() {
    // too few steps
    let out = run(&[
        "sweep",
        "--quantity",
        "fidelity",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0.9",
        "--steps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // swept variable also fixed
    let out = run(&[
        "sweep",
        "--quantity",
        "fidelity",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0.9",
        "--steps",
        "10",
        "--lambda",
        "0.3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // degenerate range
    let out = run(&[
        "sweep",
        "--quantity",
        "epr-variance",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0",
        "--steps",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_unwritable_path_exits_4() {
    let out = run(&[
        "sweep",
        "--quantity",
        "epr-variance",
        "--var",
        "lambda",
        "--lo",
        "0",
        "--hi",
        "0.9",
        "--steps",
        "5",
        "--out",
        "/nonexistent-dir/table.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_small_grid_passes() {
    let out = run(&["verify", "--grid", "small"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 6);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_bogus_grid_exits_2() {
    let out = run(&["verify", "--grid", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
