//! Command-line front end for `gapsub`.

pub mod commands;
pub mod table;

pub use commands::{run, Cli, CliError, Command};
pub use table::{run_table, TableRow};
