use hdeg_core::Error as CoreError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILS: i32 = 1;
    pub const HYPOTHESES_NOT_MET: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const CAP: i32 = 4;
    /// An internal consistency check tripped.
    pub const INTERNAL: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{stage}: {source}")]
    Compute { stage: &'static str, source: CoreError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn compute(stage: &'static str) -> impl FnOnce(CoreError) -> CliError {
        move |source| CliError::Compute { stage, source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute { source, .. } => match source {
                CoreError::CapExceeded { .. } => exit::CAP,
                CoreError::Invariant(_) => exit::INTERNAL,
                _ => exit::INPUT,
            },
            _ => exit::INPUT,
        }
    }
}
