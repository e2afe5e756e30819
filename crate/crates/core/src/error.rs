use thiserror::Error;

/// Errors produced by the simulator and the analytical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("station field is empty")]
    EmptyField,

    #[error("object {0} is already cached; touch it instead of inserting")]
    AlreadyCached(u32),

    #[error("unknown station index {index} (only {count} caches)")]
    UnknownStation { index: usize, count: usize },

    #[error("invalid placement probabilities: {0}")]
    InvalidPlacement(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("sweep grids do not match: {0}")]
    GridMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Rejects values that are not finite and strictly positive.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and > 0, got {value}")))
    }
}
