use std::fmt;

use lci_core::LciError;

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable/malformed input.
    Usage(String),
    /// A model or numeric check did not hold.
    Check(String),
    Lci(LciError),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
            CliError::Lci(e) => match e {
                LciError::Format(_) | LciError::Domain(_) => 2,
                LciError::Resource { .. } => 3,
                LciError::ContractViolation(_) => 4,
                LciError::Positivity(_) | LciError::Numerical(_) | LciError::Precondition(_) => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Lci(e) => write!(f, "{e}"),
        }
    }
}

impl From<LciError> for CliError {
    fn from(e: LciError) -> Self {
        CliError::Lci(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
