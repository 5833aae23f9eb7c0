//! Experiment runner and report writers behind the `mfbench` command.

pub mod commands;
pub mod config;
mod error;
pub mod history_csv;
pub mod report;
pub mod runner;

pub use config::ExperimentConfig;
pub use error::CliError;
