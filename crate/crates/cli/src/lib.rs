//! Batch command-line front end: each invocation writes one run directory
//! holding `report.json` (config echo, version, input hashes, results),
//! `timing.json`, and plot-ready CSV files.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, Finished, NO_LINKS};
pub use config::{Cli, CommandKind, Flags, RunConfig};
