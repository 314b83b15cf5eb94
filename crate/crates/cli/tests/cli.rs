//! End-to-end checks of the binary: report lines, exit codes, file I/O, and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_windext"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("windext-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn winding_of_catalog_monomial() {
    let out = run(&["winding", "--catalog", "monomial", "--param", "n=5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("winding=5"), "{text}");
    assert!(text.contains("grid_n=2048"));
}

#[test]
fn extend_on_emitted_counterexample_csv() {
    let csv = temp_path("paper7.csv");
    let out = run(&[
        "catalog",
        "emit",
        "paper_7_counterexample",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["extend", "--in", csv.to_str().unwrap(), "--budget", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict=meromorphic"), "{text}");
    assert!(text.contains("pole_count=1"), "{text}");
}

#[test]
fn witness_exit_code_signals_discovery() {
    let out = run(&[
        "witness", "--catalog", "conj_z", "--family", "pf1", "--budget-j", "0", "--probes",
        "1000", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("found=true"));

    let out = run(&[
        "witness", "--catalog", "monomial", "--param", "n=3", "--probes", "200", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("found=false"));
}

#[test]
fn certify_reports_inconclusive_with_exit_3() {
    let out = run(&[
        "certify",
        "--catalog",
        "boundary_zero_times",
        "--param",
        "nodes=1:1",
        "--param",
        "base=conj",
        "--nodes",
        "1:1",
        "--budget",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("status=inconclusive"));
}

#[test]
fn usage_errors_exit_64() {
    let out = run(&["winding"]);
    assert_eq!(out.status.code(), Some(64));

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn data_errors_exit_65_without_backtrace() {
    let out = run(&["winding", "--in", "/nonexistent/file.csv"]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "{err}");
    assert!(!err.contains("panicked"));

    // Non-uniform sample files are rejected.
    let csv = temp_path("nonuniform.csv");
    let mut body = String::from("theta,re,im\n");
    for j in 0..64 {
        let t = 6.28 * ((j as f64) / 64.0).powf(1.3);
        body.push_str(&format!("{t},1,0\n"));
    }
    std::fs::write(&csv, body).unwrap();
    let out = run(&["winding", "--in", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "extend",
        "--catalog",
        "paper_7_counterexample",
        "--budget",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());

    let args = [
        "witness", "--catalog", "conj_z", "--probes", "500", "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_list_names_registry() {
    let out = run(&["catalog", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "monomial",
        "conj_z",
        "rational",
        "blaschke",
        "paper_7_counterexample",
        "nonvanishing_winding",
        "boundary_zero_times",
        "smooth_bump",
    ] {
        assert!(text.contains(name), "missing {name} in {text}");
    }
}

#[test]
fn winding_trace_writes_phase_csv() {
    let trace = temp_path("trace.csv");
    let out = run(&[
        "winding",
        "--catalog",
        "monomial",
        "--param",
        "n=2",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&trace).unwrap();
    assert!(body.starts_with("theta,cumulative_phase"));
    assert_eq!(body.lines().count(), 2049);
}

#[test]
fn reproduce_scenarios_are_consistent() {
    for scenario in ["prop-2-1", "lemma-4-4"] {
        let out = run(&["reproduce", scenario]);
        assert_eq!(out.status.code(), Some(0), "{scenario}");
        assert!(stdout(&out).contains("consistent=true"), "{scenario}");
    }
}
