//! Command-line harness around `ccd_core`: CSV ingestion, method defaults,
//! replicated simulation benchmarks and JSON reports.

pub mod bench;
pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod runner;

pub use bench::{run_bench, BenchSpec, MethodSummary, RunReport, RunRow};
pub use error::{CliError, CliResult};
pub use runner::{fit, Fit, MethodSettings};
