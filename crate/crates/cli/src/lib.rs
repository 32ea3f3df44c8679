//! Experiment runner for the sublab library.
//!
//! Each suite checks one property end to end and produces a [`SuiteReport`]
//! with named pass/fail checks and a summary table. Reports are written as
//! JSON (full) and CSV (summary); runtimes are kept in a separate `timing`
//! field so the rest of the output is byte-reproducible for a given config.

pub mod config;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{ExperimentConfig, Params};
pub use report::{Check, SuiteReport, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown suite {name:?}; available: {available}")]
    UnknownSuite { name: String, available: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: sublab::Error,
    },
    #[error(transparent)]
    Library(#[from] sublab::Error),
    #[error("writing report: {0}")]
    Output(String),
}

impl CliError {
    /// 2 for input problems, 3 for exceeded budgets.
    pub fn exit_code(&self) -> i32 {
        let budget = |e: &sublab::Error| matches!(e, sublab::Error::Budget { .. });
        match self {
            CliError::Library(e) | CliError::Input { source: e, .. } if budget(e) => 3,
            CliError::Output(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs one suite and writes its reports; returns the report.
pub fn run(config: &ExperimentConfig) -> CliResult<SuiteReport> {
    let suite = suites::find(&config.suite)?;
    let ctx = suites::Context::load(config)?;
    let report = suites::execute(suite, &ctx)?;
    if let Some(dir) = &config.output {
        report::write(&report, config, dir)?;
    }
    Ok(report)
}

/// Exit status for a finished run: 0 if every check passed, 1 otherwise.
pub fn exit_code(report: &SuiteReport) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}
