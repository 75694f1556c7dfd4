//! Error type shared by every module in the crate.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Grid sizes must be powers of two and large enough for the data.
    #[error("invalid grid size {size}: {reason}")]
    InvalidGrid { size: usize, reason: &'static str },

    /// Matrix operands must agree in dimension.
    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The zero polynomial has no roots, no factorization and no log-gain.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// Eigenvalue iteration for a companion matrix failed to converge.
    #[error("root finding failed for degree {degree}: eigenvalue iteration did not converge")]
    RootSolve { degree: usize },

    /// A denominator or matrix sample is numerically singular at a grid node.
    #[error("singular on the unit circle at node {node} (conditioning {cond:.3e})")]
    SingularOnCircle { node: usize, cond: f64 },

    /// Blaschke zeros must lie in the open unit disk.
    #[error("Blaschke zero {zero} is not in the open unit disk")]
    InvalidBlaschke { zero: Complex64 },

    /// A matrix expected to be a Hermitian projection is not one.
    #[error("not a Hermitian projection (defect {defect:.3e})")]
    NotAProjection { defect: f64 },

    /// A log integrand vanished exactly at a grid node.
    #[error("log integrand vanishes at grid node {node}")]
    LogDivergence { node: usize },

    /// Magnitude data must be strictly positive to admit an outer factor.
    #[error("magnitude sample at node {node} is {value:.3e}: log integral diverges")]
    PaleyWienerViolation { node: usize, value: f64 },

    /// Energy curves are only comparable for equal-gain transfer functions.
    #[error(
        "boundary gains differ (sup defect {defect:.3e}, allowed {tol:.1e}): curves not comparable"
    )]
    NotComparable { defect: f64, tol: f64 },

    /// Quotient denominators must be minimum-phase.
    #[error("denominator has a zero at {zero} strictly inside the unit disk: not minimum-phase")]
    NotMinimumPhase { zero: Complex64 },

    /// Spectral densities must be uniformly positive definite on the circle.
    #[error("density not uniformly positive definite: eigenvalue {min_eig:.3e} at node {node}")]
    BoundaryDegenerate { node: usize, min_eig: f64 },

    /// Block Toeplitz factorization stalled above the requested accuracy.
    #[error("spectral factorization did not converge: residual {residual:.3e} at {blocks} blocks")]
    NoConvergence { residual: f64, blocks: usize },

    /// A filter file failed structural validation after parsing.
    #[error("invalid filter file: {0}")]
    BadFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 usage/parse, 2 numeric failure,
    /// 3 inputs not comparable.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotComparable { .. } => 3,
            Error::InvalidGrid { .. } | Error::BadFile(_) | Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}
