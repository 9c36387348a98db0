//! Integers `N` for which `1/N` is not a signed sum of `1/n`, `n < N`, and the
//! lower bounds on `#E_N` they give.

mod certify;
mod count;
mod decide;
mod gm;

pub use certify::{certify_u, certify_u_with, CertificateKind, CertifyOptions, UCertificate};
pub use count::{
    count_u, lower_bound_report, recursive_count_bound, theorem_curve, LowerBoundRow, UCount,
};
pub use decide::{decide_u_exact, Decision, EXACT_DECISION_CAP};
pub use gm::{g_m, g_m_table, GmEntry, GmTable};
