//! File formats, sweep configuration and the command-line front end.

pub mod commands;
pub mod config;
pub mod format;
pub mod sweep;

pub use commands::{run, Cli, Command};
pub use config::RunConfig;
pub use format::{FilterFile, FilterKind};
pub use sweep::{run_sweep, SweepSummary};
