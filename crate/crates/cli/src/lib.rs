//! Command-line frontend for `motzkin-core`: counting triangles, samplers,
//! enumeration, Metropolis experiments and cross-checks.

pub mod args;
pub mod commands;
pub mod harness;
pub mod output;
pub mod verify;

pub use args::Cli;
pub use commands::{run, CliError};
