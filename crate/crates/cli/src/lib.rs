//! Command-line front end for the qubit-oscillator dispersive models:
//! configuration parsing, sweep execution, and deterministic CSV output.

pub mod config;
pub mod csv;
pub mod run;

pub use config::{parse_config, ConfigError, Mode, SweepConfig};
pub use run::{run, RunError, RunOutput};
