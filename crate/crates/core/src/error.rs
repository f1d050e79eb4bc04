use thiserror::Error;

/// Errors raised by lattice, ideal and model operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LciError {
    /// An argument lies outside the domain of the operation (unknown label,
    /// set not in the lattice, generator outside the ground set, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configurable safety limit was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: String, limit: usize },
    /// Malformed input text, JSON or DOT.
    #[error("format error: {0}")]
    Format(String),
    /// An internal consistency check failed.
    #[error("contract violation: {0}")]
    ContractViolation(String),
    /// A margin that must be strictly positive was zero.
    #[error("positivity error: {0}")]
    Positivity(String),
    /// Rank deficiency or a singular block in a matrix computation.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = LciError> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> LciError {
    LciError::Domain(msg.into())
}
