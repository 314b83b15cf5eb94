//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them).  Every tolerance is pinned here.

use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;
use windext::catalog::{make_case, random_case, CaseClass};
use windext::criteria::{
    certify_after_zero_deflation, certify_meromorphic_extension, probe_winding, witness_search,
    CertificationStatus, ProbeFamily, SearchOptions,
};
use windext::decompose::{
    factorize_nonvanishing, newton_decompose, riesz_recombine, riesz_split,
};
use windext::extension::{
    meromorphic_test, pole_locations, rational_recover, Verdict, DEFAULT_TOL,
};
use windext::grid::{BoundaryFunction, CircleGrid};
use windext::series::{synthesize, FourierSeries};
use windext::winding::{winding_number, Delta};
use windext::zeros::ZeroFactorSet;

fn grid() -> CircleGrid {
    CircleGrid::new(2048).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn centered(&mut self) -> f64 {
        self.next() - 0.5
    }
}

fn report(criterion: usize, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion:02} {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

/// Criterion 1: winding of e^{inθ} is exactly n for |n| ≤ 32 at grid 2048,
/// in under a second.
#[test]
fn acceptance_01_winding_exactness() {
    let start = Instant::now();
    let g = grid();
    let mut ok = true;
    for n in -32i64..=32 {
        let f = BoundaryFunction::from_fn(g, |z| {
            if n >= 0 {
                z.powu(n as u32)
            } else {
                z.conj().powu((-n) as u32)
            }
        })
        .unwrap();
        let rep = winding_number(&f, Delta::default()).unwrap();
        ok &= rep.winding == n;
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    report(
        1,
        ok,
        &format!("W(e^{{inθ}}) = n for |n| ≤ 32 in {elapsed:?}"),
    );
}

/// Criterion 2: 200 random rationals with roots ≥ 0.05 off the circle wind
/// by (zeros inside) − (poles inside), 200/200.
#[test]
fn acceptance_02_argument_principle_oracle() {
    let g = grid();
    let mut rng = Lcg(0x02);
    let mut passed = 0;
    for _ in 0..200 {
        let mut draw = |max_count: usize| -> Vec<Complex64> {
            let count = 1 + (rng.next() * max_count as f64) as usize;
            (0..count)
                .map(|_| {
                    let r = if rng.next() < 0.5 {
                        0.20 + 0.75 * rng.next()
                    } else {
                        1.05 + 0.95 * rng.next()
                    };
                    Complex64::from_polar(r, TAU * rng.next())
                })
                .collect()
        };
        let zeros = draw(4);
        let poles = draw(4);
        let expected = zeros.iter().filter(|z| z.norm() < 1.0).count() as i64
            - poles.iter().filter(|z| z.norm() < 1.0).count() as i64;
        let f = BoundaryFunction::from_fn(g, |z| {
            let num: Complex64 = zeros.iter().map(|&r| z - r).product();
            let den: Complex64 = poles.iter().map(|&p| z - p).product();
            num / den
        })
        .unwrap();
        if winding_number(&f, Delta::default()).unwrap().winding == expected {
            passed += 1;
        }
    }
    report(2, passed == 200, &format!("{passed}/200 rational windings exact"));
}

/// Criterion 3: the inner-pole counterexample z/(z-1/2) reproduces winding
/// 0, anti-analytic energy 1/3, one pole at 1/2, and a witness-free z·p
/// family over 10⁴ probes, all within 10 s.
#[test]
fn acceptance_03_counterexample_reproduction() {
    let start = Instant::now();
    let case = make_case("paper_7_counterexample", &[], grid()).unwrap();

    let w = winding_number(&case.f, Delta::default()).unwrap().winding;
    let a_ok = w == 0;

    let hankel = meromorphic_test(&case.f, 1, DEFAULT_TOL).unwrap();
    let b_ok = (hankel.negative_energy - 1.0 / 3.0).abs() <= 1e-10;

    let c_ok = matches!(hankel.verdict, Verdict::MeromorphicAtMost(1))
        && hankel.pole_count == 1
        && (hankel.pole_estimates[0].0 - c(0.5, 0.0)).norm() <= 1e-8
        && hankel.hankel_singular_values[1] <= 1e-10 * hankel.hankel_singular_values[0];

    let factors = windext::catalog::parse_located_factors("0:1:in").unwrap();
    let family = ProbeFamily::f_plus_pi_p(factors, 0);
    let witness = witness_search(&case.f, &family, 10_000, 7);
    let d_ok = !witness.found && witness.probes_tried == 10_000;

    let elapsed = start.elapsed();
    let ok = a_ok && b_ok && c_ok && d_ok && elapsed.as_secs_f64() < 10.0;
    report(
        3,
        ok,
        &format!(
            "winding {w}, energy err {:e}, pole {:?}, witness_found={}, {elapsed:?}",
            (hankel.negative_energy - 1.0 / 3.0).abs(),
            hankel.pole_estimates.first(),
            witness.found
        ),
    );
}

/// Criterion 4: 50 random extendible cases × 200 valid probes each show no
/// negative winding (a found witness would be exactly such a probe).
#[test]
fn acceptance_04_soundness_sweep() {
    let g = grid();
    let mut violations = 0;
    for seed in 0..50u64 {
        let case = random_case(CaseClass::Extendible, seed, g);
        let family = ProbeFamily::pf_plus_one(0);
        let result = witness_search(&case.f, &family, 200, seed.wrapping_add(1000));
        if result.found {
            violations += 1;
        }
    }
    report(
        4,
        violations == 0,
        &format!("{violations} soundness violations over 50×200 probes"),
    );
}

/// Criterion 5: for conj(z) the exact witness 1/2 - z winds to -1, and the
/// search independently finds a witness within 10³ probes for 10/10 seeds.
#[test]
fn acceptance_05_completeness_witness() {
    let case = make_case("conj_z", &[], grid()).unwrap();
    let family = ProbeFamily::pf_plus_one(0);

    let exact = windext::poly::Polynomial::new(vec![c(0.5, 0.0), c(-1.0, 0.0)]);
    let rep = probe_winding(&case.f, &exact, &family, Delta::default()).unwrap();
    let exact_ok = rep.winding == -1;

    let mut found = 0;
    for seed in 0..10u64 {
        if witness_search(&case.f, &family, 1000, seed).found {
            found += 1;
        }
    }
    report(
        5,
        exact_ok && found == 10,
        &format!("exact witness winding {}, search hits {found}/10 seeds", rep.winding),
    );
}

/// Criterion 6: 100 random band-limited functions × random boundary node
/// sets with total multiplicity ≤ 6 reconstruct to 1e-8 relative.
#[test]
fn acceptance_06_newton_roundtrip() {
    let g = grid();
    let mut rng = Lcg(0x06);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let coeffs: Vec<Complex64> = (0..25).map(|_| c(rng.centered(), rng.centered())).collect();
        let f = synthesize(&FourierSeries::new(12, coeffs).unwrap(), g).unwrap();
        let mut remaining = 6usize;
        let mut nodes: Vec<(Complex64, usize)> = Vec::new();
        while remaining > 0 && nodes.len() < 3 {
            let m = (1 + (rng.next() * 3.0) as usize).min(remaining);
            let point = Complex64::from_polar(1.0, TAU * rng.next());
            if nodes.iter().all(|(p, _)| (p - point).norm() >= 0.3) {
                nodes.push((point, m));
                remaining -= m;
            }
        }
        let set = ZeroFactorSet::boundary(&nodes).unwrap();
        let d = newton_decompose(&f, &set).unwrap();
        let residual = d.reconstruct().unwrap().max_abs_diff(&f) / f.max_abs();
        worst = worst.max(residual);
    }
    report(
        6,
        worst <= 1e-8,
        &format!("worst reconstruction residual {worst:e} over 100 node sets"),
    );
}

/// Criterion 7: the analytic/anti-analytic split recombines bit-for-bit on
/// 100 random series.
#[test]
fn acceptance_07_riesz_exactness() {
    let mut rng = Lcg(0x07);
    let mut exact = true;
    for _ in 0..100 {
        let order = 8 + (rng.next() * 48.0) as usize;
        let coeffs: Vec<Complex64> = (0..2 * order + 1)
            .map(|_| c(rng.centered() * 8.0, rng.centered() * 8.0))
            .collect();
        let s = FourierSeries::new(order, coeffs).unwrap();
        let back = riesz_recombine(&riesz_split(&s));
        for (k, v) in s.modes() {
            // Bit-identical, not approximately equal.
            exact &= back.coeff(k) == v;
        }
    }
    report(7, exact, "split/recombine bit-identical on 100 random series");
}

/// Criterion 8: 100 random zero-free functions with prescribed winding in
/// [-3, 3] factor as F·conj(G)·z^N to 1e-9 with zero-free certificates.
#[test]
fn acceptance_08_factorization() {
    let g = grid();
    let mut rng = Lcg(0x08);
    let mut worst: f64 = 0.0;
    let mut certificates = true;
    for trial in 0..100 {
        let n = (trial % 7) as i64 - 3;
        let band = 10;
        let coeffs: Vec<Complex64> = (0..2 * band + 1)
            .map(|_| c(rng.centered() * 0.4, rng.centered() * 0.4))
            .collect();
        let s = FourierSeries::new(band, coeffs).unwrap();
        let smooth = synthesize(&s, g).unwrap();
        let f = BoundaryFunction::new(
            g,
            g.nodes()
                .zip(smooth.values())
                .map(|(z, &u)| z.powi(n as i32) * u.exp())
                .collect(),
        )
        .unwrap();
        let fact = factorize_nonvanishing(&f, Delta::default()).unwrap();
        certificates &= fact.winding == n;
        worst = worst.max(fact.residual);
        let fv = synthesize(&fact.analytic, CircleGrid::new(fact.grid_n).unwrap()).unwrap();
        let gv = synthesize(&fact.anti, CircleGrid::new(fact.grid_n).unwrap()).unwrap();
        certificates &= winding_number(&fv, Delta::default()).unwrap().winding == 0;
        certificates &= winding_number(&gv, Delta::default()).unwrap().winding == 0;
    }
    report(
        8,
        worst <= 1e-9 && certificates,
        &format!("worst residual {worst:e}, zero-free certificates {certificates}"),
    );
}

/// Criterion 9: 100 random quotients of degree ≤ 4 with denominator roots
/// ≥ 0.1 off the circle recover to 1e-8 on samples with inner poles matched
/// to 1e-6.
#[test]
fn acceptance_09_rational_recovery() {
    let g = grid();
    let mut rng = Lcg(0x09);
    let mut worst_fit: f64 = 0.0;
    let mut worst_pole: f64 = 0.0;
    let mut count_ok = true;
    for trial in 0..100 {
        let dn = 1 + (rng.next() * 4.0) as usize;
        let dd = (rng.next() * 4.0) as usize;
        let mut root = |avoid_origin: f64| loop {
            let r = if rng.next() < 0.5 {
                0.9 * rng.next()
            } else {
                1.1 + rng.next()
            };
            if (r - 1.0).abs() >= 0.1 && r >= avoid_origin {
                return Complex64::from_polar(r, TAU * rng.next());
            }
        };
        let zeros: Vec<Complex64> = (0..dn.min(4)).map(|_| root(0.0)).collect();
        let poles: Vec<Complex64> = (0..dd.min(4)).map(|_| root(0.1)).collect();
        let f = BoundaryFunction::from_fn(g, |z| {
            let num: Complex64 = zeros.iter().map(|&r| z - r).product();
            let den: Complex64 = poles.iter().map(|&p| z - p).product();
            num / den
        })
        .unwrap();
        let r = rational_recover(&f, 4).unwrap();
        let mut fit: f64 = 0.0;
        for (k, &v) in f.values().iter().enumerate().step_by(17) {
            fit = fit.max((r.eval(g.node(k)) - v).norm());
        }
        worst_fit = worst_fit.max(fit / f.max_abs());

        let mut expected: Vec<Complex64> =
            poles.iter().copied().filter(|p| p.norm() < 1.0).collect();
        let mut got: Vec<Complex64> = pole_locations(&r)
            .unwrap()
            .into_iter()
            .flat_map(|(p, m)| std::iter::repeat(p).take(m))
            .collect();
        count_ok &= expected.len() == got.len();
        let by_angle = |z: &Complex64| (z.arg(), z.norm());
        expected.sort_by(|a, b| by_angle(a).partial_cmp(&by_angle(b)).unwrap());
        got.sort_by(|a, b| by_angle(a).partial_cmp(&by_angle(b)).unwrap());
        for (e, gp) in expected.iter().zip(&got) {
            worst_pole = worst_pole.max((e - gp).norm());
        }
        if !count_ok {
            println!("trial {trial}: expected poles {expected:?} got {got:?}");
            break;
        }
    }
    report(
        9,
        worst_fit <= 1e-8 && worst_pole <= 1e-6 && count_ok,
        &format!("worst fit {worst_fit:e}, worst pole error {worst_pole:e}"),
    );
}

/// Criterion 10: the three node-certification examples and the three
/// zero-deflation pipeline examples reproduce their verdicts and pole
/// counts, and pipeline poles agree with the Hankel estimates.
#[test]
fn acceptance_10_certification_pipeline() {
    let g = grid();
    let mut ok = true;
    let mut notes = Vec::new();

    // Node certification examples.
    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) * (z - 1.0) / (1.0 - z / 3.0)).unwrap();
    let nodes2 = ZeroFactorSet::boundary(&[(Complex64::ONE, 2)]).unwrap();
    let r = certify_meromorphic_extension(&f, &nodes2, 0).unwrap();
    ok &= r.status.is_certified() && r.pole_count == 0;
    notes.push(format!("certify-1: certified={} poles={}", r.status.is_certified(), r.pole_count));

    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) / (z - 0.5)).unwrap();
    let nodes1 = ZeroFactorSet::boundary(&[(Complex64::ONE, 1)]).unwrap();
    let cert = certify_meromorphic_extension(&f, &nodes1, 1).unwrap();
    ok &= cert.status.is_certified()
        && cert.pole_count == 1
        && (cert.pole_estimates[0].0 - c(0.5, 0.0)).norm() <= 1e-6;
    notes.push(format!("certify-2: poles={:?}", cert.pole_estimates));

    // Cross-module agreement for the certified pole.
    let hankel = meromorphic_test(&f, 1, DEFAULT_TOL).unwrap();
    ok &= hankel.pole_count == cert.pole_count
        && (hankel.pole_estimates[0].0 - cert.pole_estimates[0].0).norm() <= 1e-6;

    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) * z.conj()).unwrap();
    let r = certify_meromorphic_extension(&f, &nodes1, 0).unwrap();
    let refuting = witness_search(&f, &ProbeFamily::pf_plus_one(0), 2000, 3);
    ok &= !r.status.is_certified() && refuting.found;
    notes.push(format!(
        "certify-3: certified={} witness_found={}",
        r.status.is_certified(),
        refuting.found
    ));

    // Zero-deflation pipeline examples.
    let search = SearchOptions::default();
    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) * (z - 1.0) * (z + 2.0)).unwrap();
    let r = certify_after_zero_deflation(&f, &nodes2, 0, &search).unwrap();
    ok &= r.status.is_certified() && r.pole_count == 0;
    notes.push(format!("pipeline-1: certified={}", r.status.is_certified()));

    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) / (z - 1.0 / 3.0)).unwrap();
    let r = certify_after_zero_deflation(&f, &nodes1, 1, &search).unwrap();
    ok &= r.status.is_certified()
        && r.pole_count == 1
        && (r.pole_estimates[0].0 - c(1.0 / 3.0, 0.0)).norm() <= 1e-6;
    notes.push(format!("pipeline-2: poles={:?}", r.pole_estimates));

    // Pipeline vs Hankel agreement on the same function.
    let hankel = meromorphic_test(&f, 1, DEFAULT_TOL).unwrap();
    ok &= hankel.pole_count == r.pole_count
        && (hankel.pole_estimates[0].0 - r.pole_estimates[0].0).norm() <= 1e-6;

    let f = BoundaryFunction::from_fn(g, |z| (z - 1.0) * z.conj().exp()).unwrap();
    let r = certify_after_zero_deflation(&f, &nodes1, 0, &search).unwrap();
    ok &= !r.status.is_certified();
    // The refuting witness exists and is found with a pinned seed.
    let witness = witness_search(&f, &ProbeFamily::pf_plus_one(0), 20_000, 1);
    ok &= witness.found && witness.winding <= -1;
    notes.push(format!(
        "pipeline-3: certified={} witness_found={} (after {} probes)",
        r.status.is_certified(),
        witness.found,
        witness.probes_tried
    ));

    report(10, ok, &notes.join("; "));
}

/// Criterion 11: 20 random extendible cases certify through the constant
/// shift; conj(z) is refuted by a found witness.
#[test]
fn acceptance_11_shift_criterion() {
    let start = Instant::now();
    let g = grid();
    let mut certified = 0;
    for seed in 100..120u64 {
        let case = random_case(CaseClass::Extendible, seed, g);
        let result = windext::criteria::shift_criterion_test(&case.f, 500, seed).unwrap();
        if result.status.is_certified() {
            certified += 1;
        }
    }
    let case = make_case("conj_z", &[], g).unwrap();
    let result = windext::criteria::shift_criterion_test(&case.f, 2000, 1).unwrap();
    let refuted = matches!(result.status, CertificationStatus::Refuted(_));
    let elapsed = start.elapsed();
    report(
        11,
        certified == 20 && refuted,
        &format!("{certified}/20 certified, conj(z) refuted={refuted}, {elapsed:?}"),
    );
}
