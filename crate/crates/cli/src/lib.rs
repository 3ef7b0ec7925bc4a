//! Scenario driver for the spin-eraser simulation: configuration, pipeline
//! and output formats behind the `spin-eraser` binary.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;

pub use config::{Overrides, RunConfig, ScenarioKind};
pub use error::{CliError, Result};
pub use pipeline::{run_scenario, RunOutcome};
