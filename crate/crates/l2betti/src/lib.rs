//! File formats, group-spec grammar and batch commands for the `l2betti` tool.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod grammar;

pub use commands::{cmd_betti, cmd_complex, cmd_heat, cmd_verify, run, Outcome};
pub use config::{Command, RunConfig};
pub use error::CliError;
pub use formats::{Format, Output};
pub use grammar::parse_group;
