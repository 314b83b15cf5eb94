//! Uniform sampling grid on the unit circle and boundary data attached to it.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Default grid size; certifications are re-verified at twice this.
pub const DEFAULT_GRID_N: usize = 2048;

/// Uniform grid of `n` nodes `e^{i 2πk/n}` on the unit circle.
///
/// `n` is a power of two and at least 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGrid {
    n: usize,
}

impl CircleGrid {
    pub const MIN_N: usize = 64;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN_N || !n.is_power_of_two() {
            return Err(Error::InvalidInput {
                reason: format!("grid size {n} must be a power of two and at least {}", Self::MIN_N),
            });
        }
        Ok(Self { n })
    }

    /// Default 2048-node grid.
    pub fn default_grid() -> Self {
        Self { n: DEFAULT_GRID_N }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Angle of node `k`.
    pub fn theta(&self, k: usize) -> f64 {
        TAU * (k as f64) / (self.n as f64)
    }

    /// Node `k` as a point on the circle.
    pub fn node(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta(k))
    }

    /// All nodes in order.
    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.n).map(move |k| self.node(k))
    }

    /// Grid with `factor` times as many nodes; `factor` must be a power of two.
    pub fn refine(&self, factor: usize) -> Result<Self> {
        if factor < 2 || !factor.is_power_of_two() {
            return Err(Error::InvalidInput {
                reason: format!("refinement factor {factor} must be a power of two and at least 2"),
            });
        }
        Self::new(self.n * factor)
    }

    /// Index of the grid node nearest to the boundary point `a`.
    pub fn nearest_index(&self, a: Complex64) -> usize {
        let theta = a.arg().rem_euclid(TAU);
        let k = (theta / TAU * self.n as f64).round() as usize;
        k % self.n
    }
}

/// Complex samples of a function on a [`CircleGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFunction {
    grid: CircleGrid,
    values: Vec<Complex64>,
}

impl BoundaryFunction {
    pub fn new(grid: CircleGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::InvalidInput {
                reason: format!("expected {} samples, got {}", grid.n(), values.len()),
            });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidInput {
                reason: "samples must be finite".into(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Sample `f` at every node of `grid`.
    pub fn from_fn(grid: CircleGrid, mut f: impl FnMut(Complex64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().map(|z| f(z)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Discrete L2 norm `sqrt(Σ|f_j|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Pointwise map over samples; the result must stay finite.
    pub fn map(&self, mut op: impl FnMut(Complex64) -> Complex64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|&v| op(v)).collect())
    }

    /// Pointwise combination with another function on the same grid.
    pub fn zip(&self, other: &Self, mut op: impl FnMut(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidInput {
                reason: "grid mismatch".into(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Self::new(self.grid, values)
    }

    /// Max-norm distance to another function on the same grid.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(CircleGrid::new(63).is_err());
        assert!(CircleGrid::new(100).is_err());
        assert!(CircleGrid::new(0).is_err());
        assert!(CircleGrid::new(64).is_ok());
        assert!(CircleGrid::new(2048).is_ok());
    }

    #[test]
    fn nodes_are_uniform_unit_modulus() {
        let g = CircleGrid::new(64).unwrap();
        for (k, z) in g.nodes().enumerate() {
            assert!((z.norm() - 1.0).abs() < 1e-15);
            let d = (z.arg().rem_euclid(TAU) - g.theta(k)).abs();
            assert!(d < 1e-12 || (TAU - d) < 1e-12);
        }
    }

    #[test]
    fn nearest_index_roundtrips_nodes() {
        let g = CircleGrid::new(128).unwrap();
        for k in [0usize, 1, 63, 127] {
            assert_eq!(g.nearest_index(g.node(k)), k);
        }
    }

    #[test]
    fn boundary_function_checks_length_and_finiteness() {
        let g = CircleGrid::new(64).unwrap();
        assert!(BoundaryFunction::new(g, vec![Complex64::ZERO; 63]).is_err());
        let mut vals = vec![Complex64::ZERO; 64];
        vals[5] = Complex64::new(f64::NAN, 0.0);
        assert!(BoundaryFunction::new(g, vals).is_err());
        assert!(BoundaryFunction::from_fn(g, |z| z).is_ok());
    }
}
