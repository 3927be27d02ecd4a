//! Command-line front end for the hybrid trust simulator: scenario files,
//! topology file I/O and the experiment runners, all emitting CSV.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::ModelChoice;
pub use config::ScenarioConfig;
pub use error::{CliError, CliResult};
