//! Command-line front end for the metabench workbench: experiment
//! configuration, parallel execution, CSV/JSON reports and trace export.

#![deny(missing_docs)]

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{cmd_list, cmd_rank, cmd_run, execute_plan, RankArgs, RunArgs, RunOutcome};
pub use config::{CliConfig, SEED_ENV};

use std::path::PathBuf;

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration or input file, detected before any run starts.
    #[error("{0}")]
    Config(String),
    /// A run failed after execution started.
    #[error("run failed for function `{function}`, algorithm `{algorithm}`, run {run}: {source}")]
    Cell {
        /// Function of the failing cell.
        function: String,
        /// Algorithm of the failing cell.
        algorithm: String,
        /// Run index within the cell.
        run: usize,
        /// Underlying error.
        source: metabench_core::Error,
    },
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: std::io::Error,
    },
    /// Any other failure after execution started.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    /// Process exit code: 2 for configuration errors, 1 for runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}
