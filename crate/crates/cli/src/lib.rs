//! Driver for the f4wb verification suites: configuration, a bounded worker
//! pool, JSON reports and golden files.

pub mod commands;
pub mod config;
pub mod golden;
pub mod report;
pub mod suites;

use std::path::Path;
use std::process::ExitCode;

pub use config::Config;
pub use report::Report;

/// Why a command did not succeed, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0} check(s) failed")]
    Checks(usize),
    /// The model or a derived object could not be constructed.
    #[error("{0}")]
    Model(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Checks(_) | Failure::Model(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        })
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
