//! Winding-number analysis of boundary functions on the unit circle.
//!
//! The crate samples functions on a uniform circle grid, computes winding
//! numbers by argument continuation, decides holomorphic and meromorphic
//! extendibility (with a pole budget) from the Fourier spectrum and
//! Hankel-rank structure, carries out constructive boundary decompositions
//! (jets at boundary points, Newton-form splitting, analytic/anti-analytic
//! splitting, zero-free factorization), and searches for witness polynomials
//! that refute extendibility via negative-winding probes.

pub mod catalog;
pub mod criteria;
pub mod decompose;
pub mod error;
pub mod extension;
pub mod grid;
pub mod io;
mod linalg;
pub mod poly;
pub mod series;
pub mod winding;
pub mod zeros;

pub use error::{Error, Result};
pub use grid::{BoundaryFunction, CircleGrid, DEFAULT_GRID_N};
pub use poly::Polynomial;
pub use series::{analyze, resample, synthesize, FourierSeries};
pub use winding::{winding_number, Delta, WindingReport};
pub use zeros::{Location, ZeroFactor, ZeroFactorSet};
