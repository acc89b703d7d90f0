//! Command implementations behind the `tetfield` binary.

pub mod bench;
pub mod error;
pub mod eval;
pub mod scan;
pub mod verify;

pub use error::{exit, CliError};
