use std::process::ExitCode;

/// Failures of a subcommand, split by the exit code they map to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid arguments; exit code 2.
    Usage(String),
    /// A runtime abort; exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Usage(_) => ExitCode::from(2),
            Self::Failure(_) => ExitCode::from(1),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(msg) => write!(f, "usage error: {msg}"),
            Self::Failure(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cmr_core::Error> for CliError {
    fn from(e: cmr_core::Error) -> Self {
        Self::Failure(e.to_string())
    }
}
