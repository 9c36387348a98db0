//! Configuration, result caching and table output for the `efrac` binary.

pub mod cache;
pub mod commands;
pub mod config;
mod error;
pub mod modulus;

pub use error::{CliError, Result};
