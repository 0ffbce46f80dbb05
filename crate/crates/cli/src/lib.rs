//! Command-line driver for `ncqd`: state-file evaluation, Monte Carlo scans,
//! family sweeps and d′ minimization.

pub mod commands;
pub mod format;
pub mod statefile;

use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(#[from] ncqd::Error),
    #[error("{0}")]
    Usage(String),
    #[error("optimizer did not converge: {0}")]
    NotConverged(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Invalid(_) | CliError::Usage(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
