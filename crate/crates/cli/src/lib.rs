//! Command-line front end for the adaptstream simulator.

pub mod app;
pub mod chart;
pub mod config;
pub mod eval;
pub mod render;
pub mod report;

pub use app::{main_with_args, run_command, Cli, CliError, Command};
