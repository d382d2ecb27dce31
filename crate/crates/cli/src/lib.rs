//! Command-line harness around `persub-core`: instance generation, solving, oracle
//! comparison and bound tables, with versioned JSON instance and report files.

pub mod commands;
pub mod config;
pub mod error;
pub mod files;

pub use error::{CliError, Result};
