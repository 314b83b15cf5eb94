//! Constructive boundary decompositions: jets at boundary points, iterated
//! Newton-form splitting over a node set, the analytic/anti-analytic split,
//! and zero-free factorization of nonvanishing boundary functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::BoundaryFunction;
use crate::poly::Polynomial;
use crate::series::{analyze, resample, synthesize, FourierSeries};
use crate::winding::{deflated_log, winding_number, Delta};
use crate::zeros::ZeroFactorSet;

/// Admissible top-decile energy fraction for derivative extraction.
pub const SMOOTHNESS_TOL: f64 = 1e-10;
/// Grid nodes on each side of a jet point evaluated through the Taylor form
/// of the remainder instead of pointwise division.
pub const NEAR_NODE_WINDOW: usize = 5;
/// Extra Taylor terms carried by the near-node remainder series.  Eight
/// terms keep the window-edge truncation below 1e-10 for effective bands up
/// to ~30 modes; fewer visibly pollute multi-node reconstructions.
pub const REMAINDER_EXTRA_ORDER: usize = 8;
/// Relative floor applied to the spectrum before differentiation, so the
/// broadband roundoff tail is not amplified by the mode number.
pub const DERIVATIVE_NOISE_FLOOR: f64 = 1e-12;
/// Reconstruction tolerance of the zero-free factorization, relative to max
/// modulus.
pub const FACTORIZATION_TOL: f64 = 1e-9;
/// How far a jet point may sit from the unit circle.
const BOUNDARY_EPS: f64 = 1e-9;

/// The analytic/anti-analytic split `g = F + conj(G)`.
///
/// `analytic` holds the modes `k ≥ 0` of the input; `anti` is the analytic
/// series `G` with `G_k = conj(c_{-k})` for `k ≥ 1` and zero constant term,
/// so that `conj(G)` covers all negative modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitPair {
    pub analytic: FourierSeries,
    pub anti: FourierSeries,
}

/// Split a series into its analytic part and the conjugate-analytic rest.
pub fn riesz_split(s: &FourierSeries) -> SplitPair {
    let order = s.order();
    let mut analytic = FourierSeries::zero(order);
    let mut anti = FourierSeries::zero(order);
    for k in 0..=order as i64 {
        analytic.set_coeff(k, s.coeff(k));
        if k >= 1 {
            anti.set_coeff(k, s.coeff(-k).conj());
        }
    }
    SplitPair { analytic, anti }
}

/// Exact inverse of [`riesz_split`]: rebuild the coefficients of
/// `F + conj(G)`.
pub fn riesz_recombine(pair: &SplitPair) -> FourierSeries {
    let order = pair.analytic.order().max(pair.anti.order());
    let mut s = FourierSeries::zero(order);
    for k in 0..=order as i64 {
        s.set_coeff(k, pair.analytic.coeff(k));
        if k >= 1 {
            let c = pair.anti.coeff(k).conj() + pair.analytic.coeff(-k);
            s.set_coeff(-k, c);
        }
    }
    s
}

fn check_on_circle(a: Complex64) -> Result<()> {
    let modulus = a.norm();
    if (modulus - 1.0).abs() > BOUNDARY_EPS {
        return Err(Error::NodeOffCircle { modulus });
    }
    Ok(())
}

fn check_resolved(s: &FourierSeries) -> Result<()> {
    let total = s.energy();
    if total == 0.0 {
        return Ok(());
    }
    let cutoff = (0.9 * s.order() as f64) as i64;
    let tail: f64 = s
        .modes()
        .filter(|(k, _)| k.abs() > cutoff)
        .map(|(_, c)| c.norm_sqr())
        .sum();
    let fraction = tail / total;
    if fraction > SMOOTHNESS_TOL {
        return Err(Error::InsufficientSmoothness {
            energy_fraction: fraction,
        });
    }
    Ok(())
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Tangential derivatives of `f` at `a` (term-wise Laurent differentiation
/// of the spectrum), orders `0..=max_order`.
fn derivatives_at(s: &FourierSeries, a: Complex64, max_order: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(max_order + 1);
    let mut current = s.clone();
    for j in 0..=max_order {
        out.push(current.eval(a));
        if j < max_order {
            current = current.derivative();
        }
    }
    out
}

/// Jet of order `n` at the boundary point `a`: returns the degree-`(n-1)`
/// polynomial `p` and the remainder `h` with `f = p + (z-a)^n h` on the grid.
///
/// Near `a` (within [`NEAR_NODE_WINDOW`] nodes on each side) the remainder is
/// evaluated through its Taylor series in `(z-a)`; elsewhere by pointwise
/// division.
pub fn jet_at_point(
    f: &BoundaryFunction,
    a: Complex64,
    n: usize,
) -> Result<(Polynomial, BoundaryFunction)> {
    let (taylor, h) = jet_taylor(f, a, n)?;
    // Expand Σ t_j (z-a)^j into monomial coordinates.
    let mut p = Polynomial::zero();
    let mut basis = Polynomial::one();
    let lin = Polynomial::new(vec![-a, Complex64::ONE]);
    for &t in &taylor {
        p = &p + &basis.scale(t);
        basis = &basis * &lin;
    }
    Ok((p, h))
}

/// Jet coefficients in the `(z-a)^j` basis together with the remainder.
fn jet_taylor(
    f: &BoundaryFunction,
    a: Complex64,
    n: usize,
) -> Result<(Vec<Complex64>, BoundaryFunction)> {
    if n == 0 {
        return Err(Error::InvalidInput {
            reason: "jet order must be at least 1".into(),
        });
    }
    check_on_circle(a)?;
    let s = analyze(f);
    check_resolved(&s)?;
    let max_order = 2 * n + REMAINDER_EXTRA_ORDER;
    let d = derivatives_at(&s.denoised(DERIVATIVE_NOISE_FLOOR), a, max_order);
    let taylor: Vec<Complex64> = (0..n).map(|j| d[j] / factorial(j)).collect();

    let grid = f.grid();
    let center = grid.nearest_index(a);
    let ngrid = grid.n();
    let mut h = Vec::with_capacity(ngrid);
    for k in 0..ngrid {
        let dist = {
            let raw = (k as i64 - center as i64).rem_euclid(ngrid as i64) as usize;
            raw.min(ngrid - raw)
        };
        let z = grid.node(k);
        let value = if dist <= NEAR_NODE_WINDOW {
            let dz = z - a;
            let mut acc = Complex64::ZERO;
            for m in (0..=n + REMAINDER_EXTRA_ORDER).rev() {
                acc = acc * dz + d[n + m] / factorial(n + m);
            }
            acc
        } else {
            let mut p_val = Complex64::ZERO;
            for j in (0..n).rev() {
                p_val = p_val * (z - a) + taylor[j];
            }
            (f.values()[k] - p_val) / (z - a).powu(n as u32)
        };
        h.push(value);
    }
    Ok((taylor, BoundaryFunction::new(grid, h)?))
}

/// Newton-form decomposition of `f` over a set of boundary nodes.
#[derive(Debug, Clone)]
pub struct NewtonDecomposition {
    pub nodes: ZeroFactorSet,
    /// Coefficients `A_0 .. A_{N-1}` of the Newton basis over the flattened
    /// node sequence.
    pub coeffs: Vec<Complex64>,
    /// The residual factor `g` with `f = D + Π·g` on the grid.
    pub remainder: BoundaryFunction,
    /// `D(z) = A_0 + A_1 (z-a_1) + …` expanded in monomial coordinates.
    pub jet_polynomial: Polynomial,
}

/// Successive jet extraction at each node with its multiplicity, in the
/// declared order, assembling the Newton-basis coefficients.
pub fn newton_decompose(f: &BoundaryFunction, nodes: &ZeroFactorSet) -> Result<NewtonDecomposition> {
    if !nodes.all_boundary() {
        return Err(Error::NodesNotOnBoundary);
    }
    for (i, a) in nodes.factors().iter().enumerate() {
        for b in nodes.factors().iter().skip(i + 1) {
            if (a.point - b.point).norm() <= 2.0 * nodes.eps() {
                return Err(Error::BadParams {
                    reason: format!("repeated node {}; merge multiplicities instead", a.point),
                });
            }
        }
    }
    let mut coeffs = Vec::with_capacity(nodes.total_multiplicity());
    let mut jet_polynomial = Polynomial::zero();
    let mut prefix = Polynomial::one();
    let mut remainder = f.clone();
    for factor in nodes.factors() {
        let (taylor, next) = jet_taylor(&remainder, factor.point, factor.multiplicity)?;
        let lin = Polynomial::new(vec![-factor.point, Complex64::ONE]);
        for &t in &taylor {
            jet_polynomial = &jet_polynomial + &prefix.scale(t);
            prefix = &prefix * &lin;
            coeffs.push(t);
        }
        remainder = next;
    }
    Ok(NewtonDecomposition {
        nodes: nodes.clone(),
        coeffs,
        remainder,
        jet_polynomial,
    })
}

impl NewtonDecomposition {
    /// Rebuild `D + Π·g` on the grid.
    pub fn reconstruct(&self) -> Result<BoundaryFunction> {
        let grid = self.remainder.grid();
        let pi = self.nodes.node_product();
        let values = grid
            .nodes()
            .zip(self.remainder.values())
            .map(|(z, &g)| self.jet_polynomial.eval(z) + pi.eval(z) * g)
            .collect();
        BoundaryFunction::new(grid, values)
    }
}

/// Zero-free factorization `g = F · conj(G) · z^N` with `N = W(g)` and both
/// factors zero-free on the closed disc.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub analytic: FourierSeries,
    pub anti: FourierSeries,
    pub winding: i64,
    /// Max-norm reconstruction residual relative to `max|g|`.
    pub residual: f64,
    /// Grid size at which the factorization was accepted.
    pub grid_n: usize,
}

/// Factor a nonvanishing boundary function through the logarithm of its
/// winding-deflated part: `u = log(g·z^{-N})` splits as `a + conj(b)` and
/// `F = exp(a)`, `G = exp(b)`.
pub fn factorize_nonvanishing(g: &BoundaryFunction, delta: Delta) -> Result<Factorization> {
    match factorize_attempt(g, delta) {
        Ok(fact) => Ok(fact),
        Err(Error::TruncationOverflow { .. }) => {
            let fine = resample(g, 2)?;
            factorize_attempt(&fine, delta)
        }
        Err(e) => Err(e),
    }
}

fn factorize_attempt(g: &BoundaryFunction, delta: Delta) -> Result<Factorization> {
    let (u, winding) = deflated_log(g, delta)?;
    let pair = riesz_split(&analyze(&u));
    let grid = g.grid();
    let f_values = synthesize(&pair.analytic, grid)?.map(|v| v.exp())?;
    let g_values = synthesize(&pair.anti, grid)?.map(|v| v.exp())?;
    let mut residual: f64 = 0.0;
    for (k, z) in grid.nodes().enumerate() {
        let zn = z.powi(winding as i32);
        let recon = f_values.values()[k] * g_values.values()[k].conj() * zn;
        residual = residual.max((recon - g.values()[k]).norm());
    }
    let scale = g.max_abs();
    let rel = if scale > 0.0 { residual / scale } else { residual };
    let w_f = winding_number(&f_values, delta)?.winding;
    let w_g = winding_number(&g_values, delta)?.winding;
    if rel > FACTORIZATION_TOL || w_f != 0 || w_g != 0 {
        return Err(Error::TruncationOverflow { residual: rel });
    }
    Ok(Factorization {
        analytic: analyze(&f_values),
        anti: analyze(&g_values),
        winding,
        residual: rel,
        grid_n: grid.n(),
    })
}
