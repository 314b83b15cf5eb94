//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A series is too wide for the grid it is being synthesized on.
    #[error("series order {order} exceeds grid capacity {max}")]
    TruncationMismatch { order: usize, max: usize },

    /// Conjugate reflection requested at a degree below the polynomial degree.
    #[error("polynomial degree {degree} exceeds reflection degree {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    /// The function dips below the zero guard somewhere on the grid, so the
    /// winding number is undefined.
    #[error("function modulus {min_modulus:e} is within the zero guard {delta:e} on the circle")]
    ZeroOnBoundary { min_modulus: f64, delta: f64 },

    /// Phase increments stayed too coarse after the maximum number of grid
    /// refinements.
    #[error("phase step {max_step} rad unresolved at grid size {grid_n}")]
    PhaseUnresolved { max_step: f64, grid_n: usize },

    /// The summed phase did not land near an integer number of turns.
    #[error("total phase {raw_turns} turns is not near an integer")]
    NonIntegerTotal { raw_turns: f64 },

    /// Zero counting requires an analytic boundary trace.
    #[error("anti-analytic energy fraction {energy_fraction:e} exceeds the analyticity guard")]
    NotAnalytic { energy_fraction: f64 },

    /// Singular values near the rank cutoff are too poorly separated to call.
    #[error("rank {rank} unstable: singular value gap ratio {gap_ratio:e} exceeds 0.1")]
    RankUnstable { rank: usize, gap_ratio: f64 },

    /// No rational model of the requested degree fits the samples.
    #[error("no rational model within degree bound: best residual {residual:e}")]
    NoRationalModel { residual: f64 },

    /// The least-squares system stayed degenerate after a perturbed retry.
    #[error("rational fit degenerate after perturbed retry")]
    DegenerateFit,

    /// Eigenvalue iteration for polynomial roots did not converge.
    #[error("root finding failed to converge")]
    RootFindingFailed,

    /// The boundary data is not resolved well enough on the grid for
    /// derivative extraction.
    #[error("top-decile Fourier energy fraction {energy_fraction:e} exceeds the smoothness guard")]
    InsufficientSmoothness { energy_fraction: f64 },

    /// A point that must lie on the unit circle does not.
    #[error("point has modulus {modulus} but must lie on the unit circle")]
    NodeOffCircle { modulus: f64 },

    /// An operation restricted to boundary nodes received another location.
    #[error("zero factor set contains non-boundary points")]
    NodesNotOnBoundary,

    /// The factorization did not reach its reconstruction tolerance even
    /// after one grid refinement.
    #[error("factorization residual {residual:e} exceeds tolerance after refinement")]
    TruncationOverflow { residual: f64 },

    /// Unknown catalog case name.
    #[error("unknown catalog case `{name}`")]
    UnknownCase { name: String },

    /// Malformed or missing case parameters.
    #[error("bad parameters: {reason}")]
    BadParams { reason: String },

    /// Generic precondition violation.
    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },

    /// Sample file rows are not on a uniform angular grid.
    #[error("sample nodes are not uniform: {reason}")]
    NonUniformSamples { reason: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
