//! Thin wrappers over nalgebra for the complex least-squares and
//! singular-value computations used by the recovery routines.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular values of `m`, descending.
pub(crate) fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Minimum-norm least-squares solution of `a x ≈ b` with singular values
/// below `rel_eps · σ_max` treated as zero.  Also reports whether the system
/// was numerically rank-deficient.
pub(crate) fn lstsq(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    rel_eps: f64,
) -> Option<(DVector<Complex64>, bool)> {
    let cols = a.ncols();
    let svd = a.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return Some((DVector::zeros(cols), true));
    }
    let eps = rel_eps * sigma_max;
    let deficient = svd.singular_values.iter().any(|&s| s <= eps);
    let x = svd.solve(b, eps).ok()?;
    Some((x, deficient))
}

/// Residual norm `‖a x − b‖₂`.
pub(crate) fn residual_norm(
    a: &DMatrix<Complex64>,
    x: &DVector<Complex64>,
    b: &DVector<Complex64>,
) -> f64 {
    (a * x - b).norm()
}
