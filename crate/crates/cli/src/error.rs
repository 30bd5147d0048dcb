use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] dce_core::Error),
}

impl HarnessError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        use dce_core::Error as E;
        match self {
            HarnessError::Core(
                E::NormDrift { .. } | E::TruncationTail { .. } | E::FlowTail { .. },
            ) => ExitStatus::NumericalFailure.code(),
            HarnessError::Core(E::WrongRegime(_)) => ExitStatus::PhysicsWarning.code(),
            _ => ExitStatus::Usage.code(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Outcome classes, ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Pass,
    Usage,
    PhysicsWarning,
    NumericalFailure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::Usage => 1,
            ExitStatus::PhysicsWarning => 2,
            ExitStatus::NumericalFailure => 3,
        }
    }
}
