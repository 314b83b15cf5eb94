//! Declared zero locations with multiplicities, classified against the unit
//! circle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Position of a point relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

impl Location {
    /// Classify `point` with band half-width `eps` around the circle.
    pub fn classify(point: Complex64, eps: f64) -> Location {
        let r = point.norm();
        if (r - 1.0).abs() <= eps {
            Location::Boundary
        } else if r < 1.0 {
            Location::Inside
        } else {
            Location::Outside
        }
    }
}

/// One declared zero: a point, its multiplicity, and its location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFactor {
    pub point: Complex64,
    pub multiplicity: usize,
    pub location: Location,
}

impl ZeroFactor {
    pub fn new(point: Complex64, multiplicity: usize, location: Location) -> Self {
        Self {
            point,
            multiplicity,
            location,
        }
    }
}

/// A set of zero factors; the product `Π (z - a_j)^{m_j}` they induce is
/// available as [`ZeroFactorSet::node_product`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFactorSet {
    factors: Vec<ZeroFactor>,
    eps: f64,
}

impl ZeroFactorSet {
    pub const DEFAULT_EPS: f64 = 1e-12;

    pub fn new(factors: Vec<ZeroFactor>, eps: f64) -> Result<Self> {
        for f in &factors {
            if f.multiplicity == 0 {
                return Err(Error::BadParams {
                    reason: "zero factor multiplicity must be positive".into(),
                });
            }
            if Location::classify(f.point, eps) != f.location {
                return Err(Error::BadParams {
                    reason: format!(
                        "point {} (|.| = {}) is not {:?} within eps {eps:e}",
                        f.point,
                        f.point.norm(),
                        f.location
                    ),
                });
            }
        }
        Ok(Self { factors, eps })
    }

    pub fn with_default_eps(factors: Vec<ZeroFactor>) -> Result<Self> {
        Self::new(factors, Self::DEFAULT_EPS)
    }

    /// Boundary nodes given as `(point, multiplicity)` pairs.
    pub fn boundary(nodes: &[(Complex64, usize)]) -> Result<Self> {
        Self::with_default_eps(
            nodes
                .iter()
                .map(|&(p, m)| ZeroFactor::new(p, m, Location::Boundary))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self {
            factors: Vec::new(),
            eps: Self::DEFAULT_EPS,
        }
    }

    pub fn factors(&self) -> &[ZeroFactor] {
        &self.factors
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `N = Σ m_j`.
    pub fn total_multiplicity(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn all_boundary(&self) -> bool {
        self.factors.iter().all(|f| f.location == Location::Boundary)
    }

    /// Sub-set at one location, keeping the declared eps.
    pub fn at(&self, location: Location) -> ZeroFactorSet {
        ZeroFactorSet {
            factors: self
                .factors
                .iter()
                .copied()
                .filter(|f| f.location == location)
                .collect(),
            eps: self.eps,
        }
    }

    /// Monic polynomial `Π (z - a_j)^{m_j}` of degree `N`.
    pub fn node_product(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for f in &self.factors {
            let lin = Polynomial::new(vec![-f.point, Complex64::ONE]);
            for _ in 0..f.multiplicity {
                p = &p * &lin;
            }
        }
        p
    }

    /// Points repeated by multiplicity, in declaration order.
    pub fn flattened_points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for f in &self.factors {
            out.extend(std::iter::repeat(f.point).take(f.multiplicity));
        }
        out
    }
}
