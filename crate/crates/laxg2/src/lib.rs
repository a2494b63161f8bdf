//! Driver for the `laxg2` command line tool: configuration loading, seeded
//! verification suites, degree tables, fixtures and JSON reports.

pub mod config;
pub mod fixture;
pub mod report;
pub mod suites;
pub mod table;

pub use config::{ConfigError, RunConfig, Suite};
pub use report::{Record, Report};
