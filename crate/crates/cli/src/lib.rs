//! Library surface of the `vofrac` command-line tool: run configuration,
//! the built-in case registry, and the command implementations. The binary
//! is a thin argument-parsing shell over [`commands`].

pub mod cases;
pub mod commands;
pub mod config;

pub use commands::CommandOutput;
pub use config::{CaseName, CliError, GridSpec, Operator, Reference};
