//! Library side of the experiment-runner CLI. The binary in `main.rs` is
//! a thin argument-parsing layer over the command functions here, which
//! keeps every command callable from integration tests.

pub mod bundle;
pub mod commands;
pub mod config;
pub mod runner;
pub mod tables;

use std::fmt;

/// Command-level failure with its process exit code:
/// 1 usage/config, 2 data, 3 partial matrix failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Partial(String),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::Usage(message.into())
    }

    pub fn data(message: impl Into<String>) -> CliError {
        CliError::Data(message.into())
    }

    pub fn partial(message: impl Into<String>) -> CliError {
        CliError::Partial(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Partial(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Partial(m) => write!(f, "partial failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
