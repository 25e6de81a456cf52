//! Crate-wide error type.
//!
//! Every fallible operation in the crate reports through [`Error`]. Input
//! validation is strict by design: the reductions are only meaningful on
//! well-formed instances, so constructors and translators reject malformed
//! input instead of guessing.

use thiserror::Error;

/// Errors produced by instance constructors, reductions and codecs.
#[derive(Debug, Error)]
pub enum Error {
    /// A structural parameter (degree, depth, block count, ...) is outside
    /// its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A digit vector, node, edge or element id does not belong to the
    /// structure it was used with.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// An operation is not applicable in the current state
    /// (e.g. unmarking an unmarked node).
    #[error("invalid operation: {0}")]
    InvalidOperation(String),

    /// Textual input (edge lists, instance files, version trees, ...) does
    /// not match the documented grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// Arithmetic would exceed the exact integer range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Underlying I/O failure while reading or writing instance files.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure for reports and transcripts.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for `InvalidParameter` with formatted context.
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Helper for `OutOfRange` with formatted context.
    pub fn range(msg: impl Into<String>) -> Self {
        Error::OutOfRange(msg.into())
    }

    /// Helper for `InvalidOperation` with formatted context.
    pub fn op(msg: impl Into<String>) -> Self {
        Error::InvalidOperation(msg.into())
    }

    /// Helper for `Parse` with formatted context.
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Helper for `Overflow` with formatted context.
    pub fn overflow(msg: impl Into<String>) -> Self {
        Error::Overflow(msg.into())
    }
}
