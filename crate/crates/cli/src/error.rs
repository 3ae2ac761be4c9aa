use eigdeg_core::Error as CoreError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const PRECONDITION: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(#[from] CoreError),
    /// Verification ran but at least one example failed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => exit::INPUT,
            CliError::Failed(_) => exit::NUMERIC,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

/// Exit code for a library error: malformed input, violated mathematical
/// precondition, or numerical failure.
pub fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Dimension { .. } | CoreError::DegenerateInput(_) | CoreError::UnknownExample(_) => {
            exit::INPUT
        }
        CoreError::NotARoot { .. }
        | CoreError::NotIsolated { .. }
        | CoreError::Admissibility { .. }
        | CoreError::NotASolution { .. }
        | CoreError::BranchStart { .. }
        | CoreError::Unsupported(_)
        | CoreError::Precondition(_) => exit::PRECONDITION,
        CoreError::Invariance { .. }
        | CoreError::Normalization
        | CoreError::DegenerateDifferential { .. }
        | CoreError::CorrectorFailure { .. }
        | CoreError::Inconclusive
        | CoreError::Singular
        | CoreError::Inconsistent(_) => exit::NUMERIC,
    }
}
