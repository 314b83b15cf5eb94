//! `key=value` report lines.  Floats use the shortest round-trip formatting,
//! so identical runs emit byte-identical reports.

use num_complex::Complex64;
use windext::criteria::{CertificationResult, CertificationStatus, WitnessResult};
use windext::extension::Verdict;
use windext::poly::Polynomial;
use windext::winding::WindingReport;

pub fn line(key: &str, value: impl std::fmt::Display) {
    println!("{key}={value}");
}

pub fn complex_line(key: &str, z: Complex64) {
    println!("{key}={},{}", z.re, z.im);
}

pub fn poly_lines(prefix: &str, p: &Polynomial) {
    for (k, &c) in p.coeffs().iter().enumerate() {
        complex_line(&format!("{prefix}_{k}"), c);
    }
}

pub fn winding_report(rep: &WindingReport) {
    line("winding", rep.winding);
    line("raw_phase_turns", rep.raw_phase_turns);
    line("min_modulus", rep.min_modulus);
    line("max_phase_step", rep.max_phase_step);
    line("grid_n", rep.grid_n);
}

pub fn verdict_token(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Holomorphic => "holomorphic",
        Verdict::MeromorphicAtMost(_) => "meromorphic",
        Verdict::NotWithinBudget => "not_within_budget",
    }
}

pub fn poles(estimates: &[(Complex64, usize)]) {
    for (i, &(p, m)) in estimates.iter().enumerate() {
        println!("pole_{i}={},{},{m}", p.re, p.im);
    }
}

pub fn status_token(status: &CertificationStatus) -> &'static str {
    match status {
        CertificationStatus::Certified => "certified",
        CertificationStatus::Refuted(_) => "refuted",
        CertificationStatus::Inconclusive => "inconclusive",
    }
}

pub fn witness_report(w: &WitnessResult) {
    line("found", w.found);
    line("probes_tried", w.probes_tried);
    line("seed", w.seed);
    if w.found {
        line("winding", w.winding);
        line("min_modulus", w.min_modulus);
        poly_lines("probe", &w.probe);
    }
}

pub fn certification(result: &CertificationResult) {
    line("status", status_token(&result.status));
    line("pole_count", result.pole_count);
    if let Some(residual) = result.residual {
        line("residual", residual);
    }
    poles(&result.pole_estimates);
    if let CertificationStatus::Refuted(witness) = &result.status {
        line("witness_winding", witness.winding);
        line("witness_probes_tried", witness.probes_tried);
        poly_lines("witness_probe", &witness.probe);
    }
    for note in &result.diagnostics {
        line("note", note);
    }
}

/// Exit code for a certification result: 0 certified, 2 refuted, 3
/// inconclusive.
pub fn certification_exit(result: &CertificationResult) -> i32 {
    match result.status {
        CertificationStatus::Certified => 0,
        CertificationStatus::Refuted(_) => 2,
        CertificationStatus::Inconclusive => 3,
    }
}
