//! Command-line front end for `typei-core`: corpus generation, validation,
//! decomposition, topology checks and the traceability suite, with JSON
//! persistence for every domain type.

pub mod app;
pub mod commands;
pub mod error;
pub mod json;
pub mod suite;

pub use app::{run, Cli};
pub use error::{CliError, CliResult};
