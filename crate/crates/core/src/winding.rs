//! Winding numbers by argument continuation and zero counting via the
//! argument principle.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};
use crate::grid::BoundaryFunction;
use crate::poly::Polynomial;
use crate::series::{analyze, resample, synthesize, FourierSeries};

/// Default relative zero guard: `delta = 1e-9 · max|f|`.
pub const DEFAULT_DELTA_REL: f64 = 1e-9;
/// A phase step at or above this triggers grid refinement.
pub const PHASE_STEP_LIMIT: f64 = FRAC_PI_2;
/// At most this many grid doublings before giving up.
pub const MAX_REFINEMENTS: usize = 3;
/// Refinement never exceeds this grid size.
pub const MAX_GRID_N: usize = 16384;
/// Tolerance on the distance of the phase total to an integer, in turns.
pub const INTEGER_TOL: f64 = 1e-6;
/// Anti-analytic energy fraction admitted when counting zeros.
pub const ANALYTIC_ENERGY_TOL: f64 = 1e-8;

/// Zero guard for winding computations, either absolute or relative to the
/// maximum modulus of the function under test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Delta {
    Absolute(f64),
    Relative(f64),
}

impl Delta {
    pub fn resolve(self, max_abs: f64) -> f64 {
        match self {
            Delta::Absolute(d) => d,
            Delta::Relative(r) => r * max_abs,
        }
    }
}

impl Default for Delta {
    fn default() -> Self {
        Delta::Relative(DEFAULT_DELTA_REL)
    }
}

/// Outcome of a winding computation.
#[derive(Debug, Clone, PartialEq)]
pub struct WindingReport {
    /// The integer winding number.
    pub winding: i64,
    /// Total unwrapped phase divided by 2π, before rounding.
    pub raw_phase_turns: f64,
    /// Smallest sample modulus encountered.
    pub min_modulus: f64,
    /// Largest single phase increment, radians.
    pub max_phase_step: f64,
    /// Grid size at which the phase resolved.
    pub grid_n: usize,
}

/// Winding number of `f` around 0 by summed phase increments.
///
/// Each increment is the principal argument of `f_{j+1}/f_j`; any increment
/// at or above π/2 triggers trigonometric resampling at 2×, up to three
/// times, before failing with [`Error::PhaseUnresolved`].
pub fn winding_number(f: &BoundaryFunction, delta: Delta) -> Result<WindingReport> {
    let delta = delta.resolve(f.max_abs());
    if !(delta > 0.0) {
        return Err(Error::InvalidInput {
            reason: "zero guard delta must be positive".into(),
        });
    }
    let mut current = f.clone();
    let mut refinements = 0;
    loop {
        let min_modulus = current.min_abs();
        if min_modulus <= delta {
            return Err(Error::ZeroOnBoundary {
                min_modulus,
                delta,
            });
        }
        let values = current.values();
        let n = values.len();
        let mut total = 0.0;
        let mut max_step = 0.0f64;
        for j in 0..n {
            let step = (values[(j + 1) % n] / values[j]).arg();
            max_step = max_step.max(step.abs());
            total += step;
        }
        if max_step >= PHASE_STEP_LIMIT {
            if refinements < MAX_REFINEMENTS && 2 * n <= MAX_GRID_N {
                current = resample(&current, 2)?;
                refinements += 1;
                continue;
            }
            return Err(Error::PhaseUnresolved {
                max_step,
                grid_n: n,
            });
        }
        let raw_phase_turns = total / TAU;
        let rounded = raw_phase_turns.round();
        if (raw_phase_turns - rounded).abs() > INTEGER_TOL {
            return Err(Error::NonIntegerTotal {
                raw_turns: raw_phase_turns,
            });
        }
        return Ok(WindingReport {
            winding: rounded as i64,
            raw_phase_turns,
            min_modulus,
            max_phase_step: max_step,
            grid_n: n,
        });
    }
}

/// Number of zeros in the disc of the holomorphic extension of `g`,
/// counting multiplicity, via the argument principle.
///
/// The boundary trace must be analytic: its anti-analytic Fourier energy is
/// required to stay below `1e-8` of the total.
pub fn zero_count(g: &BoundaryFunction, delta: Delta) -> Result<i64> {
    let s = analyze(g);
    let total = s.energy();
    let neg = s.negative_energy();
    if total > 0.0 && neg > ANALYTIC_ENERGY_TOL * total {
        return Err(Error::NotAnalytic {
            energy_fraction: neg / total,
        });
    }
    Ok(winding_number(g, delta)?.winding)
}

/// Whether `Z(z^shift · g + p) ≤ degree_bound + shift` holds on the grid.
///
/// `g` must be the boundary trace of a holomorphic function and the probe
/// degree may not exceed `shift`.
pub fn zero_bound_holds(
    g: &BoundaryFunction,
    degree_bound: usize,
    shift: usize,
    probe: &Polynomial,
    delta: Delta,
) -> Result<bool> {
    if let Some(d) = probe.degree() {
        if d > shift {
            return Err(Error::InvalidInput {
                reason: format!("probe degree {d} exceeds shift {shift}"),
            });
        }
    }
    let composite = BoundaryFunction::new(
        g.grid(),
        g.grid()
            .nodes()
            .zip(g.values())
            .map(|(z, &v)| z.powu(shift as u32) * v + probe.eval(z))
            .collect(),
    )?;
    let count = zero_count(&composite, delta)?;
    Ok(count <= (degree_bound + shift) as i64)
}

/// Node-wise logarithm with the winding removed: returns `u` with
/// `u_j = log(f_j · z_j^{-W})` (imaginary part unwrapped along the grid)
/// and the winding number `W` of `f`.
pub(crate) fn deflated_log(f: &BoundaryFunction, delta: Delta) -> Result<(BoundaryFunction, i64)> {
    let report = winding_number(f, delta)?;
    let w = report.winding;
    let values = f.values();
    let n = values.len();
    let mut phase = values[0].arg();
    let mut u = Vec::with_capacity(n);
    for j in 0..n {
        if j > 0 {
            phase += (values[j] / values[j - 1]).arg();
        }
        let theta = f.grid().theta(j);
        u.push(Complex64::new(values[j].norm().ln(), phase - w as f64 * theta));
    }
    Ok((BoundaryFunction::new(f.grid(), u)?, w))
}

/// Power sums `Σ zeros^p − Σ poles^p` (p = 1..=count) over the open disc for
/// any meromorphic extension consistent with the boundary trace of `f`,
/// obtained from the Fourier modes of the deflated logarithm.
pub fn argument_moments(f: &BoundaryFunction, delta: Delta, count: usize) -> Result<Vec<Complex64>> {
    let (u, _) = deflated_log(f, delta)?;
    let s = analyze(&u);
    Ok((1..=count as i64).map(|p| -s.coeff(-p) * (p as f64)).collect())
}

/// Monic polynomial whose roots have the given power sums, via Newton's
/// identities.  `sums[p-1]` holds `Σ roots^p`.
pub fn monic_from_power_sums(sums: &[Complex64], degree: usize) -> Polynomial {
    assert!(sums.len() >= degree, "need {degree} power sums");
    // e_k satisfies k·e_k = Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i.
    let mut e = vec![Complex64::ZERO; degree + 1];
    e[0] = Complex64::ONE;
    for k in 1..=degree {
        let mut acc = Complex64::ZERO;
        let mut sign = 1.0;
        for i in 1..=k {
            acc += sign * e[k - i] * sums[i - 1];
            sign = -sign;
        }
        e[k] = acc / (k as f64);
    }
    // Monic polynomial: z^d - e_1 z^{d-1} + e_2 z^{d-2} - ...
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    for k in 0..=degree {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[degree - k] = sign * e[k];
    }
    Polynomial::new(coeffs)
}

/// Convenience used by tests and the search engine: evaluate a series-backed
/// composite on a finer grid and recompute its winding there.
pub fn winding_at_refinement(f: &BoundaryFunction, factor: usize, delta: Delta) -> Result<WindingReport> {
    let fine = synthesize(&analyze(f), f.grid().refine(factor)?)?;
    winding_number(&fine, delta)
}

/// Smallest band containing all modes whose coefficient exceeds the noise
/// floor; used in reports.
pub fn effective_order(s: &FourierSeries, floor_rel: f64) -> usize {
    let floor = floor_rel * s.max_coeff_abs();
    s.modes()
        .filter(|(_, c)| c.norm() > floor)
        .map(|(k, _)| k.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}
