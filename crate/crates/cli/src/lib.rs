//! Command implementations behind the `omega` binary. Each command returns a
//! [`RunReport`]; rendering and exit codes live in `main.rs`.

pub mod commands;
pub mod report;
pub mod status;

pub use commands::*;
pub use report::{CliError, Format, RunReport};
