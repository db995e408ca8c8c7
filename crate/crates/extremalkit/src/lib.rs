//! File formats, SVG export, parallel annealing and the self-test suite
//! behind the `extremalkit` command-line tool.

pub mod parallel;
pub mod schema;
pub mod selftest;
pub mod svg;

use extremalkit_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::CapExceeded { .. })
            | CliError::Core(Error::NoLegalPlacement(_))
            | CliError::Core(Error::IllegalDrawing(_)) => exit::INFEASIBLE,
            CliError::Core(Error::Consistency(_)) => exit::INTERNAL,
            _ => exit::USAGE,
        }
    }
}
