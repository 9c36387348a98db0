//! Exact cardinalities of Egyptian-fraction sum sets and certified bounds on
//! their exponential growth rate.

pub mod alpha;
pub mod arith;
pub mod density;
mod error;
pub mod subsetsum;
pub mod uset;

pub use error::{Error, Result};
