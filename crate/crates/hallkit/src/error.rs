//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by quiver validation, representation-space enumeration and
/// algebra operations.
///
/// Resource errors always name the configured bound that was exceeded so a
/// caller can tell a mathematical failure from a budget failure.
#[derive(Debug, Error)]
pub enum HallError {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unsupported field size q={0}: expected one of 2, 3, 5, 7")]
    UnsupportedField(u32),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("resource cap `{cap}` = {limit} exceeded: {job} needs {needed}")]
    CapExceeded {
        cap: &'static str,
        limit: u128,
        job: String,
        needed: u128,
    },

    #[error("class {0} is not exceptional (End must be 1-dimensional with vanishing self-extensions)")]
    NotExceptional(String),

    #[error("not an exceptional pair: {0}")]
    NotExceptionalPair(String),

    #[error("mixed contexts: {0}")]
    ContextMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
