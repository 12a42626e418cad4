//! Scenario runner for the `airy-evolve` command.

pub mod config;
pub mod error;
pub mod output;
pub mod params;
pub mod runner;
mod scenarios;

pub use config::{Kind, Scenario};
pub use error::{CliError, Result};
pub use runner::{run, run_scenarios, RunOptions};
