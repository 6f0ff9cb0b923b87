//! Error taxonomy shared by every module in the crate.
//!
//! Four categories cover all reported failures: `Domain` for mathematically
//! invalid input, `Range` for input outside the validated window (the message
//! carries the bound that was exceeded), `Convergence` for an algorithm that
//! could not reach its accuracy target (the message carries its best error
//! estimate), and `Precondition` for caller-supplied data missing a required
//! ingredient.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input is mathematically invalid for the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is outside the validated range; the message names the bound.
    #[error("range error: {0}")]
    Range(String),

    /// An iteration or series failed to meet its accuracy target.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Caller-supplied data lacks a required ingredient.
    #[error("precondition error: {0}")]
    Precondition(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    pub fn convergence(msg: impl Into<String>) -> Self {
        Error::Convergence(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
