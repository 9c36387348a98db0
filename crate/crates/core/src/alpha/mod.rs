//! Certified upper bounds on the growth constant of `#E_N`.

mod bounds;
mod log;

pub use bounds::{
    full_divisor_bound, general_chain_bound, lemma_a_bound, lemma_a_bounds, ln2_lower,
    mixed_bound, mixed_bound_with, mixed_estimates, LiftRule, single_set_bound, to_naturals, BoundMethod, BoundReport,
    MixedEstimate, Provenance, REPORT_DIGITS,
};
pub use log::{log_lower, log_pow2_ratio_lower, log_upper, LogLower, LogUpper, MIN_PRECISION_BITS};
