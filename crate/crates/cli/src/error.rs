//! Process-level error classification: configuration errors exit with 2,
//! runtime (computation/check) errors with 1.

use std::fmt;

#[derive(Debug)]
pub enum AppError {
    /// Scenario schema violation; message carries the dotted field path.
    Config(String),
    /// A computation failed; message carries the scenario context.
    Runtime(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Config(msg) => write!(f, "config error: {msg}"),
            AppError::Runtime(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for AppError {}

/// Annotate a core error with the scenario field it arose from.
pub fn runtime(context: &str, e: relmech_core::Error) -> AppError {
    AppError::Runtime(format!("{context}: {e}"))
}
