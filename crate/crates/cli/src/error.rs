use std::path::PathBuf;

use tetfield::mesh::{EvalSetError, MeshError};
use tetfield::records::CsvError;
use tetfield::{GeometryError, OracleError};
use thiserror::Error;

/// Process exit statuses. Usage errors (2) are reported by the argument
/// parser itself.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const VERIFICATION: i32 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("{path}: {source}")]
    Points { path: PathBuf, source: CsvError },
    #[error("invalid evaluation points: {0}")]
    EvalSet(#[from] EvalSetError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: CsvError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("quadrature failed: {0}")]
    Oracle(#[from] OracleError),
    #[error("verification failed: max relative error {max_error:.3e} exceeds {tol:.3e}")]
    Verification { max_error: f64, tol: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mesh(MeshError::Io { .. }) => exit::IO,
            CliError::Mesh(e) if e.is_parse_error() => exit::PARSE,
            CliError::Points {
                source: CsvError::Io(_),
                ..
            } => exit::IO,
            CliError::Points { .. } => exit::PARSE,
            CliError::Mesh(_)
            | CliError::EvalSet(_)
            | CliError::Argument(_)
            | CliError::Geometry(_) => exit::VALIDATION,
            CliError::Verification { .. } => exit::VERIFICATION,
            CliError::Output { .. } | CliError::Io(_) | CliError::Oracle(_) => exit::IO,
        }
    }
}
