//! Ground-truth test-function generators with analytically known
//! extendibility class, winding, and pole counts.  The truth metadata comes
//! from the construction, never from measurement, which makes the catalog
//! the oracle layer for property tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::grid::{BoundaryFunction, CircleGrid};
use crate::zeros::{Location, ZeroFactor, ZeroFactorSet};

/// Analytically known facts about a catalog function.
#[derive(Debug, Clone)]
pub struct Truth {
    /// Extends holomorphically through the disc.
    pub extendible: bool,
    /// Minimal meromorphic pole budget; `None` when no finite budget works.
    pub pole_budget: Option<usize>,
    /// Winding number of the function, or of its zero-deflated part when
    /// boundary zeros are declared.
    pub winding: i64,
    pub boundary_zeros: ZeroFactorSet,
}

/// A named boundary function with its truth metadata.
#[derive(Debug, Clone)]
pub struct CatalogCase {
    pub name: String,
    pub f: BoundaryFunction,
    pub truth: Truth,
}

/// Class selector for [`random_case`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseClass {
    Extendible,
    MeromorphicJ(usize),
    NonExtendible,
}

/// Registry names accepted by [`make_case`], with parameter summaries.
pub fn list_cases() -> Vec<(&'static str, &'static str)> {
    vec![
        ("monomial", "z^n (param n, may be negative)"),
        ("conj_z", "conjugate of z, one pole at the origin"),
        (
            "rational",
            "quotient from roots (params zeros, poles as `;`-separated complex)",
        ),
        ("blaschke", "finite Blaschke product (param zeros)"),
        (
            "paper_7_counterexample",
            "z/(z-1/2): winding 0 yet only meromorphically extendible",
        ),
        (
            "nonvanishing_winding",
            "z^n·(2+cosθ), zero-free with winding n (param n)",
        ),
        (
            "boundary_zero_times",
            "Π₂(z)·base with declared boundary zeros (params nodes, base)",
        ),
        ("smooth_bump", "real positive C^∞ bump (param width)"),
    ]
}

fn get_param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn parse_i64(params: &[(String, String)], key: &str, default: i64) -> Result<i64> {
    match get_param(params, key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| Error::BadParams {
            reason: format!("{key} must be an integer, got `{v}`"),
        }),
    }
}

fn parse_f64(params: &[(String, String)], key: &str, default: f64) -> Result<f64> {
    match get_param(params, key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| Error::BadParams {
            reason: format!("{key} must be a number, got `{v}`"),
        }),
    }
}

/// Parse `re` or `re±imi` (also bare `i`, `-i`, `0.3i`).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    let bad = || Error::BadParams {
        reason: format!("cannot parse complex number `{text}`"),
    };
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // Split real and imaginary at the last +/- that is neither the
        // leading sign nor an exponent sign.
        let chars: Vec<char> = body.chars().collect();
        let mut split = None;
        for i in (1..chars.len()).rev() {
            if (chars[i] == '+' || chars[i] == '-') && chars[i - 1] != 'e' && chars[i - 1] != 'E' {
                split = Some(i);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().map_err(|_| bad())?,
        };
        let re = if re_str.is_empty() {
            0.0
        } else {
            re_str.parse::<f64>().map_err(|_| bad())?
        };
        return Ok(Complex64::new(re, im));
    }
    Err(bad())
}

fn parse_complex_list(params: &[(String, String)], key: &str) -> Result<Vec<Complex64>> {
    match get_param(params, key) {
        None => Ok(Vec::new()),
        Some(v) if v.trim().is_empty() => Ok(Vec::new()),
        Some(v) => v.split(';').map(parse_complex).collect(),
    }
}

fn monomial_samples(n: i64, grid: CircleGrid) -> BoundaryFunction {
    BoundaryFunction::from_fn(grid, |z| {
        if n >= 0 {
            z.powu(n as u32)
        } else {
            z.conj().powu((-n) as u32)
        }
    })
    .expect("monomial samples are finite")
}

fn monomial_truth(n: i64) -> Truth {
    Truth {
        extendible: n >= 0,
        pole_budget: Some((-n).max(0) as usize),
        winding: n,
        boundary_zeros: ZeroFactorSet::empty(),
    }
}

/// Build a registry case by name.
pub fn make_case(name: &str, params: &[(String, String)], grid: CircleGrid) -> Result<CatalogCase> {
    let case = match name {
        "monomial" => {
            let n = parse_i64(params, "n", 1)?;
            if n.unsigned_abs() as usize > grid.n() / 4 {
                return Err(Error::BadParams {
                    reason: format!("monomial order {n} too large for grid {}", grid.n()),
                });
            }
            CatalogCase {
                name: format!("monomial({n})"),
                f: monomial_samples(n, grid),
                truth: monomial_truth(n),
            }
        }
        "conj_z" => CatalogCase {
            name: "conj_z".into(),
            f: monomial_samples(-1, grid),
            truth: monomial_truth(-1),
        },
        "rational" => {
            let zeros = parse_complex_list(params, "zeros")?;
            let poles = parse_complex_list(params, "poles")?;
            let eps = 1e-9;
            for r in zeros.iter().chain(&poles) {
                if (r.norm() - 1.0).abs() <= eps {
                    return Err(Error::BadParams {
                        reason: format!("root {r} lies on the circle"),
                    });
                }
            }
            let inside = |list: &[Complex64]| list.iter().filter(|z| z.norm() < 1.0).count() as i64;
            let winding = inside(&zeros) - inside(&poles);
            let inner_poles = inside(&poles) as usize;
            let f = BoundaryFunction::from_fn(grid, |z| {
                let num: Complex64 = zeros.iter().map(|&r| z - r).product();
                let den: Complex64 = poles.iter().map(|&p| z - p).product();
                num / den
            })?;
            CatalogCase {
                name: "rational".into(),
                f,
                truth: Truth {
                    extendible: inner_poles == 0,
                    pole_budget: Some(inner_poles),
                    winding,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        "blaschke" => {
            let zeros = parse_complex_list(params, "zeros")?;
            if zeros.is_empty() {
                return Err(Error::BadParams {
                    reason: "blaschke needs at least one zero".into(),
                });
            }
            if zeros.iter().any(|z| z.norm() >= 1.0) {
                return Err(Error::BadParams {
                    reason: "blaschke zeros must lie inside the disc".into(),
                });
            }
            let degree = zeros.len() as i64;
            let f = BoundaryFunction::from_fn(grid, |z| {
                zeros
                    .iter()
                    .map(|&a| (z - a) / (Complex64::ONE - a.conj() * z))
                    .product()
            })?;
            CatalogCase {
                name: format!("blaschke(deg {degree})"),
                f,
                truth: Truth {
                    extendible: true,
                    pole_budget: Some(0),
                    winding: degree,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        "paper_7_counterexample" => {
            let f = BoundaryFunction::from_fn(grid, |z| z / (z - 0.5))?;
            CatalogCase {
                name: "paper_7_counterexample".into(),
                f,
                truth: Truth {
                    extendible: false,
                    pole_budget: Some(1),
                    winding: 0,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        "nonvanishing_winding" => {
            let n = parse_i64(params, "n", 2)?;
            let f = BoundaryFunction::from_fn(grid, |z| {
                let zn = if n >= 0 {
                    z.powu(n as u32)
                } else {
                    z.conj().powu((-n) as u32)
                };
                zn * (2.0 + (z + z.conj()) / 2.0)
            })?;
            CatalogCase {
                name: format!("nonvanishing_winding({n})"),
                f,
                truth: Truth {
                    // Lowest Fourier mode is n-1.
                    extendible: n >= 1,
                    pole_budget: Some((1 - n).max(0) as usize),
                    winding: n,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        "boundary_zero_times" => {
            let nodes_text = get_param(params, "nodes").unwrap_or("1:1");
            let nodes = parse_boundary_nodes(nodes_text)?;
            let base = get_param(params, "base").unwrap_or("analytic");
            let pi = nodes.node_product();
            let (base_fn, extendible, pole_budget, winding): (
                Box<dyn Fn(Complex64) -> Complex64>,
                bool,
                Option<usize>,
                i64,
            ) = match base {
                "analytic" => (Box::new(|z: Complex64| 1.0 / (1.0 - z / 3.0)), true, Some(0), 0),
                "conj" => (Box::new(|z: Complex64| z.conj()), false, Some(1), -1),
                "cos" => (
                    Box::new(|z: Complex64| 2.0 + (z + z.conj()) / 2.0),
                    false,
                    Some(1),
                    0,
                ),
                other => {
                    return Err(Error::BadParams {
                        reason: format!("unknown base `{other}` (analytic | conj | cos)"),
                    })
                }
            };
            let f = BoundaryFunction::from_fn(grid, |z| pi.eval(z) * base_fn(z))?;
            CatalogCase {
                name: format!("boundary_zero_times({base})"),
                f,
                truth: Truth {
                    extendible,
                    pole_budget,
                    winding,
                    boundary_zeros: nodes,
                },
            }
        }
        "smooth_bump" => {
            let width = parse_f64(params, "width", 0.5)?;
            if width <= 0.0 {
                return Err(Error::BadParams {
                    reason: "width must be positive".into(),
                });
            }
            let f = BoundaryFunction::from_fn(grid, |z| {
                let half = (z.arg() / 2.0).sin();
                Complex64::new((-half * half / (width * width)).exp(), 0.0)
            })?;
            CatalogCase {
                name: format!("smooth_bump({width})"),
                f,
                truth: Truth {
                    extendible: false,
                    // Real nonconstant data is never meromorphically
                    // extendible with finitely many poles.
                    pole_budget: None,
                    winding: 0,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        other => {
            return Err(Error::UnknownCase {
                name: other.to_string(),
            })
        }
    };
    Ok(case)
}

/// Parse `point:mult,point:mult` boundary node lists.
pub fn parse_boundary_nodes(text: &str) -> Result<ZeroFactorSet> {
    let mut nodes = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (point_str, mult_str) = part.rsplit_once(':').ok_or_else(|| Error::BadParams {
            reason: format!("node `{part}` must be point:multiplicity"),
        })?;
        let point = parse_complex(point_str)?;
        let multiplicity = mult_str.parse::<usize>().map_err(|_| Error::BadParams {
            reason: format!("bad multiplicity `{mult_str}`"),
        })?;
        nodes.push((point, multiplicity));
    }
    ZeroFactorSet::boundary(&nodes)
}

/// Parse `point:mult:loc` lists with `loc` in `in | bd | out`.
pub fn parse_located_factors(text: &str) -> Result<ZeroFactorSet> {
    let mut factors = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let fields: Vec<&str> = part.split(':').collect();
        if fields.len() != 3 {
            return Err(Error::BadParams {
                reason: format!("factor `{part}` must be point:multiplicity:location"),
            });
        }
        let point = parse_complex(fields[0])?;
        let multiplicity = fields[1].parse::<usize>().map_err(|_| Error::BadParams {
            reason: format!("bad multiplicity `{}`", fields[1]),
        })?;
        let location = match fields[2] {
            "in" => Location::Inside,
            "bd" => Location::Boundary,
            "out" => Location::Outside,
            other => {
                return Err(Error::BadParams {
                    reason: format!("bad location `{other}` (in | bd | out)"),
                })
            }
        };
        factors.push(ZeroFactor::new(point, multiplicity, location));
    }
    ZeroFactorSet::new(factors, 1e-9)
}

/// Deterministic random case of the given class.
///
/// * `Extendible`: random polynomial with roots in `|z| ≤ 0.8` times a
///   zero-free exponential of an analytic polynomial.
/// * `MeromorphicJ(J)`: an extendible base divided by a denominator with
///   exactly `J` well-separated roots in `0.1 ≤ |z| ≤ 0.8`.
/// * `NonExtendible`: an extendible base normalized to unit minimum modulus
///   plus a `0.25·z^{-k}` admixture, `k ∈ 1..=3`; the admixture keeps the
///   anti-analytic energy far above every tolerance floor while the base
///   still dominates on the circle, so the winding is unchanged.
pub fn random_case(class: CaseClass, seed: u64, grid: CircleGrid) -> CatalogCase {
    let tag = match class {
        CaseClass::Extendible => 0x45u64,
        CaseClass::MeromorphicJ(j) => 0x4d00 + j as u64,
        CaseClass::NonExtendible => 0x4e,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (tag << 32));

    let zero_count = rng.random_range(0..=3usize);
    let zeros: Vec<Complex64> = (0..zero_count)
        .map(|_| Complex64::from_polar(0.8 * rng.random_range(0.0..1.0), rng.random_range(0.0..TAU)))
        .collect();
    let exp_degree = rng.random_range(1..=4usize);
    let exp_coeffs: Vec<Complex64> = (0..exp_degree)
        .map(|_| Complex64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)))
        .collect();
    let base = {
        let zeros = zeros.clone();
        move |z: Complex64| {
            let p: Complex64 = zeros.iter().map(|&r| z - r).product();
            let q: Complex64 = exp_coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * z.powu(i as u32 + 1))
                .sum();
            p * q.exp()
        }
    };
    let base_winding = zero_count as i64;

    match class {
        CaseClass::Extendible => {
            let f = BoundaryFunction::from_fn(grid, &base).expect("finite");
            CatalogCase {
                name: format!("random_extendible(seed {seed})"),
                f,
                truth: Truth {
                    extendible: true,
                    pole_budget: Some(0),
                    winding: base_winding,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        CaseClass::MeromorphicJ(j) => {
            let mut poles: Vec<Complex64> = Vec::new();
            while poles.len() < j {
                let cand =
                    Complex64::from_polar(rng.random_range(0.1..0.8), rng.random_range(0.0..TAU));
                // Keep denominator roots separated and away from base zeros
                // so every pole is genuine.
                let clear = poles.iter().all(|p| (p - cand).norm() >= 0.05)
                    && zeros.iter().all(|r| (r - cand).norm() >= 0.05);
                if clear {
                    poles.push(cand);
                }
            }
            let f = BoundaryFunction::from_fn(grid, |z| {
                let den: Complex64 = poles.iter().map(|&p| z - p).product();
                base(z) / den
            })
            .expect("finite");
            CatalogCase {
                name: format!("random_meromorphic({j}, seed {seed})"),
                f,
                truth: Truth {
                    extendible: j == 0,
                    pole_budget: Some(j),
                    winding: base_winding - j as i64,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
        CaseClass::NonExtendible => {
            let raw = BoundaryFunction::from_fn(grid, &base).expect("finite");
            let min = raw.min_abs().max(1e-6);
            let k = rng.random_range(1..=3u32);
            let f = BoundaryFunction::new(
                grid,
                grid.nodes()
                    .zip(raw.values())
                    .map(|(z, &v)| v / min + 0.25 * z.conj().powu(k))
                    .collect(),
            )
            .expect("finite");
            CatalogCase {
                name: format!("random_nonextendible(seed {seed})"),
                f,
                truth: Truth {
                    extendible: false,
                    pole_budget: Some(k as usize),
                    winding: base_winding,
                    boundary_zeros: ZeroFactorSet::empty(),
                },
            }
        }
    }
}
