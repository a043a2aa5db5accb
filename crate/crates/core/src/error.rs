use thiserror::Error;

use crate::series::PolySeries;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} lies outside the domain [{a}, {b}]")]
    Domain { point: f64, a: f64, b: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid basis parameter: {0}")]
    Parameter(String),

    #[error("degenerate Jacobi parameters: alpha + beta + {n} vanishes")]
    Degenerate { n: usize },

    #[error("operation not supported for basis {0}")]
    UnsupportedBasis(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("incompatible operands: {0}")]
    Contract(String),

    /// Fitting did not reach the plateau before the degree cap. The
    /// best-effort series is returned alongside.
    #[error("function not resolved by degree {degree}")]
    NonResolution { degree: usize, best: Box<PolySeries> },

    #[error("singular system: pivot {pivot:e} below threshold {threshold:e}")]
    Singular { pivot: f64, threshold: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("oracle size {size} exceeds the cap {cap}; use the pointwise oracle")]
    Oversize { size: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
