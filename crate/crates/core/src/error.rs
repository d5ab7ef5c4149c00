use thiserror::Error;

/// Errors raised by the series engine, the dense kernels and the iteration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term")]
    ZeroConstantTerm,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("scalar kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is singular to working precision (pivot {index}, |pivot| = {magnitude:e})")]
    Singular { index: usize, magnitude: f64 },

    #[error("norm of B = I - A is {0}, must be < 1")]
    NotContractive(f64),

    #[error("complex matrices are not supported here")]
    ComplexUnsupported,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
