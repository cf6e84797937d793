use std::path::PathBuf;

use thiserror::Error;

/// Failures of a CLI invocation, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or parameter values.
    #[error("{0}")]
    Usage(String),

    /// A numerical evaluation failed (series did not converge, lost precision, …).
    #[error("{0}")]
    Numerical(String),

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<twdp::Error> for CliError {
    fn from(e: twdp::Error) -> Self {
        match e {
            twdp::Error::Domain { .. } | twdp::Error::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
