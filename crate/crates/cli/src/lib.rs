//! Command-line front end: configuration, report rendering and the
//! verification suites.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use commands::run;
pub use config::{Format, RunConfig, Verb};
pub use error::{CliError, CliResult};
pub use report::{Record, Report};
