//! Extendibility decisions: the vanishing-negative-spectrum test for
//! holomorphic extension, a Hankel-rank criterion for meromorphic extension
//! with a pole budget, and degree-bounded rational recovery from boundary
//! samples.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::BoundaryFunction;
use crate::linalg;
use crate::poly::Polynomial;
use crate::series::{analyze, FourierSeries, COEFF_NOISE_REL};

/// Default relative tolerance for the holomorphic test and the Hankel rank
/// cutoff.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Residual threshold for a successful rational fit, relative to `‖f‖₂`.
pub const FIT_RESIDUAL_TOL: f64 = 1e-8;
/// Largest Hankel block used for rank decisions.
pub const MAX_HANKEL_SIZE: usize = 64;
/// Singular values this close to the rank cutoff make the rank an error
/// rather than a guess.
pub const RANK_GAP_LIMIT: f64 = 0.1;
/// Poles are kept only strictly inside the circle by this margin.
pub const INSIDE_MARGIN: f64 = 1e-9;
/// Root clustering tolerance when assigning multiplicities.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Extendibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holomorphic,
    /// Meromorphic with at most the given number of poles, counting
    /// multiplicity.
    MeromorphicAtMost(usize),
    NotWithinBudget,
}

/// Diagnostic record of an extendibility decision.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub verdict: Verdict,
    /// `Σ_{k<0} |c_k|²` of the boundary samples.
    pub negative_energy: f64,
    /// Singular values of the anti-analytic Hankel block, descending.
    pub hankel_singular_values: Vec<f64>,
    /// Estimated poles inside the disc with multiplicities.
    pub pole_estimates: Vec<(Complex64, usize)>,
    /// Total estimated pole count (sum of multiplicities).
    pub pole_count: usize,
}

/// Quotient of polynomials normalized to `den(0) = 1`, with no common roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Build and normalize; common roots within `1e-8` are cancelled.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        let d0 = den.coeff(0);
        if d0.norm() == 0.0 {
            return Err(Error::InvalidInput {
                reason: "denominator must be nonzero at the origin".into(),
            });
        }
        let mut num = num.scale(1.0 / d0);
        let mut den = den.scale(1.0 / d0);
        // Cancel near-common roots so the stored pair is coprime.
        if !num.is_zero() && den.degree_or_zero() > 0 && num.degree_or_zero() > 0 {
            let nroots = num.roots()?;
            let droots = den.roots()?;
            let mut keep_n = vec![true; nroots.len()];
            let mut keep_d = vec![true; droots.len()];
            for (i, &rn) in nroots.iter().enumerate() {
                for (j, &rd) in droots.iter().enumerate() {
                    if keep_n[i] && keep_d[j] && (rn - rd).norm() <= 1e-8 {
                        keep_n[i] = false;
                        keep_d[j] = false;
                    }
                }
            }
            if keep_n.iter().any(|k| !k) {
                let lead_n = num.coeff(num.degree_or_zero());
                let lead_d = den.coeff(den.degree_or_zero());
                let kept_n: Vec<Complex64> = nroots
                    .iter()
                    .zip(&keep_n)
                    .filter(|(_, &k)| k)
                    .map(|(&r, _)| r)
                    .collect();
                let kept_d: Vec<Complex64> = droots
                    .iter()
                    .zip(&keep_d)
                    .filter(|(_, &k)| k)
                    .map(|(&r, _)| r)
                    .collect();
                num = Polynomial::from_roots(&kept_n).scale(lead_n);
                den = Polynomial::from_roots(&kept_d).scale(lead_d);
                let d0 = den.coeff(0);
                if d0.norm() == 0.0 {
                    return Err(Error::DegenerateFit);
                }
                num = num.scale(1.0 / d0);
                den = den.scale(1.0 / d0);
            }
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Larger of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }
}

/// Hankel matrix `H_{ij} = c_{-(i+j+1)}` (0-indexed) of the anti-analytic
/// coefficients, with entries below the noise floor zeroed.
fn hankel_block(s: &FourierSeries, size: usize) -> DMatrix<Complex64> {
    let floor = COEFF_NOISE_REL * s.max_coeff_abs();
    let tap = |i: usize| {
        let c = s.coeff(-(i as i64));
        if c.norm() < floor {
            Complex64::ZERO
        } else {
            c
        }
    };
    DMatrix::from_fn(size, size, |i, j| tap(i + j + 1))
}

/// Vanishing-negative-spectrum test: true iff the anti-analytic energy is at
/// most `tol² ·` (total energy).
pub fn holomorphic_test(f: &BoundaryFunction, tol: f64) -> (bool, ExtensionReport) {
    let s = analyze(f);
    let negative_energy = s.negative_energy();
    let total = s.energy();
    let ok = negative_energy <= tol * tol * total;
    let verdict = if ok {
        Verdict::Holomorphic
    } else {
        Verdict::NotWithinBudget
    };
    (
        ok,
        ExtensionReport {
            verdict,
            negative_energy,
            hankel_singular_values: Vec::new(),
            pole_estimates: Vec::new(),
            pole_count: 0,
        },
    )
}

/// Meromorphic extendibility with at most `budget` poles, decided by the
/// numerical rank of the anti-analytic Hankel block.
///
/// The rank `r` counts singular values above `tol · σ₁`.  A collapsed tail
/// certifies a rank-`r` model whose poles are estimated from the linear
/// recurrence satisfied by the anti-analytic coefficients.
pub fn meromorphic_test(f: &BoundaryFunction, budget: usize, tol: f64) -> Result<ExtensionReport> {
    let s = analyze(f);
    let negative_energy = s.negative_energy();
    let size = MAX_HANKEL_SIZE.min(s.order());
    let h = hankel_block(&s, size);
    let sv = linalg::singular_values(&h);
    let sigma1 = sv.first().copied().unwrap_or(0.0);
    let rank = if sigma1 == 0.0 {
        0
    } else {
        sv.iter().filter(|&&x| x > tol * sigma1).count()
    };
    if rank > 0 && rank < size {
        let gap_ratio = sv[rank] / sv[rank - 1];
        if gap_ratio > RANK_GAP_LIMIT {
            return Err(Error::RankUnstable { rank, gap_ratio });
        }
    }
    let (pole_estimates, pole_count) = if rank > 0 && rank < size {
        let poles = prony_poles(&s, rank, size)?;
        let count = poles.iter().map(|&(_, m)| m).sum();
        (poles, count)
    } else {
        (Vec::new(), rank)
    };
    let verdict = if rank == 0 {
        Verdict::Holomorphic
    } else if rank <= budget {
        Verdict::MeromorphicAtMost(rank)
    } else {
        Verdict::NotWithinBudget
    };
    Ok(ExtensionReport {
        verdict,
        negative_energy,
        hankel_singular_values: sv,
        pole_estimates,
        pole_count,
    })
}

/// Poles of the rank-`r` model: the anti-analytic coefficients satisfy a
/// linear recurrence of order `r` whose characteristic roots are the poles.
fn prony_poles(s: &FourierSeries, rank: usize, size: usize) -> Result<Vec<(Complex64, usize)>> {
    let taps: Vec<Complex64> = (1..2 * size).map(|i| s.coeff(-(i as i64))).collect();
    let rows = taps.len() - rank;
    let a = DMatrix::from_fn(rows, rank, |m, j| taps[m + rank - 1 - j]);
    let b = DVector::from_fn(rows, |m, _| taps[m + rank]);
    let (x, _) = linalg::lstsq(&a, &b, 1e-13).ok_or(Error::DegenerateFit)?;
    // w^r - a_1 w^{r-1} - ... - a_r.
    let mut coeffs = vec![Complex64::ZERO; rank + 1];
    coeffs[rank] = Complex64::ONE;
    for j in 0..rank {
        coeffs[rank - 1 - j] = -x[j];
    }
    let roots = Polynomial::new(coeffs).roots()?;
    let inside: Vec<Complex64> = roots
        .into_iter()
        .filter(|z| z.norm() < 1.0 - INSIDE_MARGIN)
        .collect();
    Ok(cluster_roots(&inside, CLUSTER_TOL))
}

/// Group near-identical roots into `(centroid, multiplicity)` pairs.
pub(crate) fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match clusters
            .iter_mut()
            .find(|(center, _)| (*center - r).norm() <= tol)
        {
            Some((center, count)) => {
                *center = (*center * (*count as f64) + r) / (*count as f64 + 1.0);
                *count += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
}

/// Least-squares recovery of `f` as a quotient of polynomials of degree at
/// most `max_degree`, normalized to `den(0) = 1`.
///
/// The fit sweeps degrees upward and accepts the first one whose relative
/// residual `‖Q·f − P‖₂ / ‖f‖₂` is at most `1e-8`, which keeps the returned
/// pair coprime.
pub fn rational_recover(f: &BoundaryFunction, max_degree: usize) -> Result<RationalFunction> {
    let norm = f.l2_norm();
    if norm == 0.0 {
        return RationalFunction::new(Polynomial::zero(), Polynomial::one());
    }
    let nodes: Vec<Complex64> = f.grid().nodes().collect();
    let values = f.values();
    let mut best_residual = f64::INFINITY;
    for degree in 0..=max_degree {
        match fit_at_degree(&nodes, values, degree, norm)? {
            FitOutcome::Accepted(rf) => return Ok(rf),
            FitOutcome::Rejected(residual) => best_residual = best_residual.min(residual),
        }
    }
    Err(Error::NoRationalModel {
        residual: best_residual,
    })
}

enum FitOutcome {
    Accepted(RationalFunction),
    Rejected(f64),
}

fn fit_at_degree(
    nodes: &[Complex64],
    values: &[Complex64],
    degree: usize,
    norm: f64,
) -> Result<FitOutcome> {
    let n = nodes.len();
    let cols = 2 * degree + 1;
    // Unknowns: p_0..p_degree, then q_1..q_degree; rows impose
    // P(z_k) - f_k (q_1 z_k + ... + q_d z_k^d) = f_k.
    let mut a = DMatrix::<Complex64>::zeros(n, cols);
    for (k, &z) in nodes.iter().enumerate() {
        let mut zp = Complex64::ONE;
        for j in 0..=degree {
            a[(k, j)] = zp;
            if j >= 1 {
                a[(k, degree + j)] = -values[k] * zp;
            }
            zp *= z;
        }
    }
    let b = DVector::from_column_slice(values);
    let solved = match linalg::lstsq(&a, &b, 1e-13) {
        Some(s) => Some(s),
        None => {
            // Retry once against a deterministically perturbed right side.
            let perturbed = DVector::from_fn(n, |k, _| {
                let wiggle = 1e-12 * norm * ((k as f64 * 0.7391).sin());
                b[k] + Complex64::new(wiggle, -wiggle)
            });
            linalg::lstsq(&a, &perturbed, 1e-13)
        }
    };
    let (x, _) = solved.ok_or(Error::DegenerateFit)?;
    let residual = linalg::residual_norm(&a, &x, &b) / norm;
    if residual > FIT_RESIDUAL_TOL {
        return Ok(FitOutcome::Rejected(residual));
    }
    let num = Polynomial::new((0..=degree).map(|j| x[j]).collect());
    let mut den_coeffs = vec![Complex64::ONE];
    den_coeffs.extend((1..=degree).map(|j| x[degree + j]));
    let den = Polynomial::new(den_coeffs);
    Ok(FitOutcome::Accepted(RationalFunction::new(num, den)?))
}

/// Denominator roots strictly inside the unit circle, with multiplicities by
/// clustering.
pub fn pole_locations(r: &RationalFunction) -> Result<Vec<(Complex64, usize)>> {
    let roots = r.den().roots()?;
    let inside: Vec<Complex64> = roots
        .into_iter()
        .filter(|z| z.norm() < 1.0 - INSIDE_MARGIN)
        .collect();
    Ok(cluster_roots(&inside, CLUSTER_TOL))
}
