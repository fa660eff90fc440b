use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the signature-function pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid kernel spec: {0}")]
    InvalidSpec(String),

    #[error("derivative of order {order} unavailable for the unregularized Laplace kernel")]
    DerivativeUnavailable { order: u8 },

    #[error("point cloud contains coincident points (indices {i} and {k})")]
    DuplicatePoints { i: usize, k: usize },

    #[error("invalid point cloud: {0}")]
    InvalidCloud(String),

    #[error("invalid point count: {0}")]
    InvalidCount(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("density solve failed: {0}")]
    SolveFailed(String),

    #[error("gradient below the singular threshold at ({point}) after {attempts} perturbation attempts")]
    SingularPoint { point: String, attempts: u32 },

    #[error("need at least {needed} probes for ambient dimension {needed}, got {got}")]
    InsufficientProbes { needed: usize, got: usize },

    #[error("operation requires ambient dimension {required}, model has {got}")]
    DimensionUnsupported { required: usize, got: usize },
}
