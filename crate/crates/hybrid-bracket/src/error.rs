use thiserror::Error;

/// Errors surfaced by the observable algebra, dynamics, and state machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("hbar mismatch: {left} vs {right}")]
    HbarMismatch { left: f64, right: f64 },

    #[error("unsupported generator: {kind} at dimension {dim}")]
    UnsupportedGenerator { kind: &'static str, dim: usize },

    #[error("operator part is not hermitian (defect {defect:.3e} exceeds {tolerance:.3e})")]
    NonHermitian { defect: f64, tolerance: f64 },

    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameter { field: &'static str, message: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
