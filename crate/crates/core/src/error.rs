//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A Gram matrix failed the positive-definiteness check. Carries the
    /// 1-based size of the first leading principal minor that is not
    /// positive, together with its exact value.
    #[error("Gram matrix is not positive definite: leading {minor_size}x{minor_size} minor = {minor_value}")]
    NotPositiveDefinite { minor_size: usize, minor_value: i128 },

    /// Mismatched dimensions or incompatible operands (e.g. vectors of the
    /// wrong length, or group elements from different root systems).
    #[error("argument error: {0}")]
    Argument(String),

    /// A configurable resource cap was exceeded. `partial` reports how far
    /// the computation got before giving up.
    #[error("resource cap exceeded in {what}: limit {limit}, reached {partial}")]
    Resource {
        what: &'static str,
        limit: u128,
        partial: u128,
    },

    /// The requested operation is not defined for this input type.
    #[error("unsupported type: {0}")]
    Unsupported(String),

    /// An internal structural property that must hold by construction was
    /// observed to fail. This always indicates a bug, never bad user input.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
