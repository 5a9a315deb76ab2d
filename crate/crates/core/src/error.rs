use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point is outside the chart domain: {0}")]
    ChartSingular(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("unsupported parameter case: {0}")]
    Unsupported(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("mass {mu} is below the principal-series threshold {mu_min}")]
    ComplementarySeries { mu: f64, mu_min: f64 },

    #[error("x·ξ = 0: point lies on the singular surface of the plane wave")]
    SingularSurface,

    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),

    #[error("accuracy target missed: {0}")]
    Accuracy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
