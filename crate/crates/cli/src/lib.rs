//! Document format, check suites and command-line driver for the `qavg` tool.

pub mod cli;
pub mod document;
pub mod error;
pub mod model;
pub mod suites;

pub use cli::run;
