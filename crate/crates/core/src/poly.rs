//! Complex polynomials in ascending coefficient order.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grid::{BoundaryFunction, CircleGrid};

/// Trailing coefficients below this fraction of the largest one are trimmed.
pub const TRIM_REL: f64 = 1e-12;

/// Polynomial with complex coefficients, ascending by degree.  The zero
/// polynomial stores no coefficients and has degree `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c · z^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = &p * &Self::new(vec![-r, Complex64::ONE]);
        }
        p
    }

    fn trim(&mut self) {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let floor = TRIM_REL * max;
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= floor {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating the zero polynomial as degree 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    /// Evaluate at every node of the grid.
    pub fn eval_on_grid(&self, grid: CircleGrid) -> BoundaryFunction {
        BoundaryFunction::from_fn(grid, |z| self.eval(z)).expect("polynomial values are finite")
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * (k as f64))
                .collect(),
        )
    }

    /// Polynomial `A` of degree ≤ `n` with `A(z) = z^n · conj(D(z))` on the
    /// unit circle: coefficient `d_k` maps to `conj(d_k)` at degree `n - k`.
    pub fn conjugate_reflect(&self, n: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeTooHigh { degree: d, max: n });
            }
        }
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.conj();
        }
        Ok(Self::new(coeffs))
    }

    /// Long division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        let ddeg = divisor.degree().ok_or(Error::InvalidInput {
            reason: "division by the zero polynomial".into(),
        })?;
        let lead = divisor.coeffs[ddeg];
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut q = vec![Complex64::ZERO; qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + ddeg] / lead;
            q[i] = c;
            for j in 0..=ddeg {
                rem[i + j] -= c * divisor.coeffs[j];
            }
        }
        rem.truncate(ddeg);
        Ok((Self::new(q), Self::new(rem)))
    }

    /// Roots via eigenvalues of the companion matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let deg = match self.degree() {
            None | Some(0) => return Ok(Vec::new()),
            Some(d) => d,
        };
        let lead = self.coeffs[deg];
        let mut m = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = Complex64::ONE;
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -self.coeffs[i] / lead;
        }
        let schur = m.try_schur(1e-14, 20_000).ok_or(Error::RootFindingFailed)?;
        let (_, t) = schur.unpack();
        Ok((0..deg).map(|i| t[(i, i)]).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len().max(rhs.coeffs.len())];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}
