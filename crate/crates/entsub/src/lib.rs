//! JSON formats and command implementations behind the `entsub` binary.
//!
//! Every command is a pure function from parsed inputs to a serializable
//! report; the binary only handles argument parsing, IO and exit codes.

pub mod commands;
pub mod json;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] entsub_core::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Successful run with at least one undecided cut.
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Usage, validation or input errors.
pub const EXIT_USAGE: i32 = 2;
