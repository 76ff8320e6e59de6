//! Command-line front end: basis listings, structure-constant tables and
//! verification reports for `T^Δ` at given `(p, n, e)`.
//!
//! Reports are canonical JSON (schema `tsring/1`) or CSV; identical inputs
//! give byte-identical output.

pub mod commands;
pub mod report;

use thiserror::Error;

pub use commands::{cmd_basis, cmd_oracle_check, cmd_table, cmd_verify, table_csv, Check, FieldSpec, VerifyOptions};
pub use report::{Report, Status, SCHEMA};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tsring_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Usage and input errors exit with 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
