use thiserror::Error;

/// Errors surfaced by library entry points. The CLI maps each variant to a
/// distinct process exit code, so variants are coarse by design.
#[derive(Debug, Error)]
pub enum Error {
    /// Input is well-formed but violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Rank conditions that no module orbit realizes.
    #[error("unrealizable rank conditions: {0}")]
    Unrealizable(String),

    /// Input could not be parsed at all.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
