//! Configuration parsing and CSV producers behind the `jcspec` binary.

pub mod config;
pub mod output;
pub mod run;

pub use config::{parse_config, parse_entries, ConfigEntries, ConfigError, GridRange, Mode, RunConfig};
pub use run::{run, RunError};
