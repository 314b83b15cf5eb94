//! Truncated Laurent series on the circle and the transforms between
//! coefficients and boundary samples.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::grid::{BoundaryFunction, CircleGrid};

/// Coefficients below this fraction of the largest one are treated as zero
/// when classifying spectra.
pub const COEFF_NOISE_REL: f64 = 1e-13;

/// Truncated series `Σ_{|k| ≤ M} c_k z^k` on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    order: usize,
    /// 2M+1 coefficients; index `k + M` holds `c_k`.
    coeffs: Vec<Complex64>,
}

impl FourierSeries {
    pub fn new(order: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * order + 1 {
            return Err(Error::InvalidInput {
                reason: format!("order {order} needs {} coefficients, got {}", 2 * order + 1, coeffs.len()),
            });
        }
        Ok(Self { order, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Complex64::ZERO; 2 * order + 1],
        }
    }

    /// Series with the given `(k, c_k)` pairs and zeros elsewhere.
    pub fn from_pairs(order: usize, pairs: &[(i64, Complex64)]) -> Result<Self> {
        let mut s = Self::zero(order);
        for &(k, c) in pairs {
            if k.unsigned_abs() as usize > order {
                return Err(Error::InvalidInput {
                    reason: format!("mode {k} outside order {order}"),
                });
            }
            s.set_coeff(k, c);
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient `c_k`; zero outside the stored band.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let m = self.order as i64;
        if k < -m || k > m {
            Complex64::ZERO
        } else {
            self.coeffs[(k + m) as usize]
        }
    }

    pub fn set_coeff(&mut self, k: i64, c: Complex64) {
        let m = self.order as i64;
        assert!(k >= -m && k <= m, "mode {k} outside order {}", self.order);
        self.coeffs[(k + m) as usize] = c;
    }

    /// Iterate `(k, c_k)` over the stored band.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.order as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - m, c))
    }

    /// Modes `k ≥ 0` (negative modes zeroed).
    pub fn analytic_part(&self) -> Self {
        let mut s = self.clone();
        for k in 1..=self.order as i64 {
            s.set_coeff(-k, Complex64::ZERO);
        }
        s
    }

    /// Modes `k < 0` (others zeroed).
    pub fn antianalytic_part(&self) -> Self {
        let mut s = Self::zero(self.order);
        for k in 1..=self.order as i64 {
            s.set_coeff(-k, self.coeff(-k));
        }
        s
    }

    /// `Σ |c_k|²` over the stored band.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ_{k<0} |c_k|²`.
    pub fn negative_energy(&self) -> f64 {
        (1..=self.order as i64).map(|k| self.coeff(-k).norm_sqr()).sum()
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Copy with every coefficient at or below `floor_rel · max|c|` zeroed.
    pub fn denoised(&self, floor_rel: f64) -> Self {
        let floor = floor_rel * self.max_coeff_abs();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c.norm() <= floor { Complex64::ZERO } else { c })
            .collect();
        Self {
            order: self.order,
            coeffs,
        }
    }

    /// Term-wise Laurent derivative `Σ k c_k z^{k-1}`; the order grows by one.
    pub fn derivative(&self) -> Self {
        let order = self.order + 1;
        let mut out = Self::zero(order);
        for (k, c) in self.modes() {
            if k != 0 {
                out.set_coeff(k - 1, c * (k as f64));
            }
        }
        out
    }

    /// Evaluate at a point of the unit circle (negative powers use `conj`).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        // Horner over each half so the powers stay on the unit circle.
        let m = self.order as i64;
        let mut pos = Complex64::ZERO;
        for k in (0..=m).rev() {
            pos = pos * z + self.coeff(k);
        }
        let mut neg = Complex64::ZERO;
        for k in (1..=m).rev() {
            neg = neg * zb + self.coeff(-k);
        }
        pos + neg * zb
    }

    /// Max-norm of the coefficient difference, padding the shorter band.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let m = self.order.max(other.order) as i64;
        (-m..=m)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// Fourier coefficients of the samples: `c_k = (1/n) Σ_j f_j e^{-ikθ_j}` for
/// `|k| ≤ n/2 - 1`, alias-folded.
pub fn analyze(f: &BoundaryFunction) -> FourierSeries {
    let n = f.grid().n();
    let mut buf: Vec<Complex64> = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let order = n / 2 - 1;
    let scale = 1.0 / n as f64;
    let mut s = FourierSeries::zero(order);
    for k in 0..=order as i64 {
        s.set_coeff(k, buf[k as usize] * scale);
        if k > 0 {
            s.set_coeff(-k, buf[n - k as usize] * scale);
        }
    }
    s
}

/// Samples `f_j = Σ_k c_k e^{ikθ_j}`; exact inverse of [`analyze`] on
/// band-limited data.
pub fn synthesize(s: &FourierSeries, grid: CircleGrid) -> Result<BoundaryFunction> {
    let n = grid.n();
    if s.order() > n / 2 {
        return Err(Error::TruncationMismatch {
            order: s.order(),
            max: n / 2,
        });
    }
    let mut buf = vec![Complex64::ZERO; n];
    for (k, c) in s.modes() {
        let bin = (k.rem_euclid(n as i64)) as usize;
        // += so the two M = n/2 modes sharing the Nyquist bin fold correctly.
        buf[bin] += c;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    BoundaryFunction::new(grid, buf)
}

/// Trigonometric interpolation onto a grid `factor` times finer.
pub fn resample(f: &BoundaryFunction, factor: usize) -> Result<BoundaryFunction> {
    let fine = f.grid().refine(factor)?;
    synthesize(&analyze(f), fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> CircleGrid {
        CircleGrid::new(n).unwrap()
    }

    #[test]
    fn monomial_has_single_coefficient() {
        let f = BoundaryFunction::from_fn(grid(256), |z| z).unwrap();
        let s = analyze(&f);
        assert!((s.coeff(1) - Complex64::ONE).norm() < 1e-13);
        for (k, c) in s.modes() {
            if k != 1 {
                assert!(c.norm() < 1e-13, "mode {k} = {c}");
            }
        }
    }

    #[test]
    fn constant_is_mode_zero() {
        let f = BoundaryFunction::from_fn(grid(64), |_| Complex64::new(3.0, 0.0)).unwrap();
        let s = analyze(&f);
        assert!((s.coeff(0) - Complex64::new(3.0, 0.0)).norm() < 1e-13);
        assert!(s.negative_energy() < 1e-26);
    }

    #[test]
    fn geometric_tail_of_inner_pole() {
        // z/(z-1/2) = Σ_{k≥0} 2^{-k} z^{-k} on the circle.
        let f = BoundaryFunction::from_fn(grid(2048), |z| z / (z - 0.5)).unwrap();
        let s = analyze(&f);
        for k in 0..30i64 {
            let expect = Complex64::new(0.5f64.powi(k as i32), 0.0);
            assert!((s.coeff(-k) - expect).norm() < 1e-12, "mode {}", -k);
        }
        for k in 1..30i64 {
            assert!(s.coeff(k).norm() < 1e-12);
        }
    }

    #[test]
    fn synthesize_rejects_too_wide_series() {
        let s = FourierSeries::zero(100);
        assert!(matches!(
            synthesize(&s, grid(128)),
            Err(Error::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn synthesize_single_mode() {
        let s = FourierSeries::from_pairs(4, &[(1, Complex64::ONE)]).unwrap();
        let f = synthesize(&s, grid(64)).unwrap();
        for (k, v) in f.values().iter().enumerate() {
            assert!((v - f.grid().node(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn parseval_on_random_series() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let order = 30;
        let coeffs: Vec<Complex64> = (0..2 * order + 1)
            .map(|_| Complex64::new(next(), next()))
            .collect();
        let s = FourierSeries::new(order, coeffs).unwrap();
        let f = synthesize(&s, grid(128)).unwrap();
        let lhs = s.energy();
        let rhs = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / 128.0;
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
    }

    #[test]
    fn resample_agrees_at_original_nodes() {
        let f = BoundaryFunction::from_fn(grid(64), |z| z * z + Complex64::new(0.3, 0.1) * z.conj())
            .unwrap();
        let fine = resample(&f, 2).unwrap();
        for k in 0..64 {
            assert!((f.values()[k] - fine.values()[2 * k]).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_monomials() {
        let s = FourierSeries::from_pairs(3, &[(2, Complex64::ONE), (-1, Complex64::new(0.0, 1.0))])
            .unwrap();
        let d = s.derivative();
        assert!((d.coeff(1) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((d.coeff(-2) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_matches_samples() {
        let s = FourierSeries::from_pairs(
            5,
            &[
                (0, Complex64::new(1.0, -2.0)),
                (3, Complex64::new(0.5, 0.25)),
                (-2, Complex64::new(-0.1, 0.7)),
            ],
        )
        .unwrap();
        let g = grid(64);
        let f = synthesize(&s, g).unwrap();
        for k in [0usize, 7, 31, 63] {
            assert!((s.eval(g.node(k)) - f.values()[k]).norm() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn analyze_synthesize_roundtrip(raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 33)) {
            let order = 16;
            let coeffs: Vec<Complex64> = raw.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let s = FourierSeries::new(order, coeffs).unwrap();
            let f = synthesize(&s, grid(64)).unwrap();
            let back = analyze(&f);
            prop_assert!(back.max_coeff_diff(&s) < 1e-12);
        }
    }
}
