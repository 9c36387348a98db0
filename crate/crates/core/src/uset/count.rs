use num_bigint::BigUint;

use super::certify::{certify_u_with, CertificateKind, CertifyOptions, UCertificate};
use super::decide::{decide_u_exact, EXACT_DECISION_CAP};
use super::gm::{g_m_table, GmTable};
use crate::arith::primes_upto;
use crate::error::{Error, Result};

/// Certified members of `U ∩ [1, x]`.
///
/// Below `exact_cap` membership was decided exhaustively, so the list is
/// complete there; above it only certified members are listed and the count
/// is a lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UCount {
    pub x: u64,
    pub exact_cap: u64,
    pub members: Vec<UCertificate>,
}

impl UCount {
    pub fn count(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn member_values(&self) -> Vec<u64> {
        self.members.iter().map(|c| c.n).collect()
    }

    /// Whether the member list is the whole of `U(x)`.
    pub fn is_complete(&self) -> bool {
        self.x <= self.exact_cap
    }
}

pub fn count_u(x: u64, exact_cap: u64, budget: u64) -> Result<UCount> {
    if exact_cap > EXACT_DECISION_CAP {
        return Err(Error::CapExceeded {
            what: "exact cap",
            value: exact_cap,
            cap: EXACT_DECISION_CAP,
        });
    }
    let gm = g_m_table(exact_cap.max(2));
    let rules_only = CertifyOptions { exact_cap: 0, budget };
    let mut members = Vec::new();
    for n in 1..=x {
        if n <= exact_cap {
            if !decide_u_exact(n, budget)?.member {
                continue;
            }
            let cert = certify_u_with(n, &gm, rules_only)?.unwrap_or(UCertificate {
                n,
                kind: CertificateKind::Exhaustive,
            });
            members.push(cert);
        } else if let Some(cert) = certify_with_known(n, &gm, &members, exact_cap, budget)? {
            members.push(cert);
        }
    }
    Ok(UCount {
        x,
        exact_cap,
        members,
    })
}

/// Rule-based certificate that may lean on already decided members for `m`.
fn certify_with_known(
    n: u64,
    gm: &GmTable,
    known: &[UCertificate],
    exact_cap: u64,
    budget: u64,
) -> Result<Option<UCertificate>> {
    if let Some(c) = certify_u_with(n, gm, CertifyOptions { exact_cap: 0, budget })? {
        return Ok(Some(c));
    }
    // lifts whose cofactor was only settled exhaustively
    let factored = match crate::arith::FactoredInteger::factor(n) {
        Ok(f) => f,
        Err(_) => return Ok(None),
    };
    for &p in factored.factors().keys().rev() {
        let k = crate::arith::p_adic_valuation(n, p);
        let m = n / p.pow(k);
        if m > exact_cap || known.binary_search_by_key(&m, |c| c.n).is_err() {
            continue;
        }
        if BigUint::from(p) > gm.g(m) {
            return Ok(Some(UCertificate {
                n,
                kind: CertificateKind::Lift { m, p, k },
            }));
        }
    }
    Ok(None)
}

/// `sum_{m ∈ u_y} pi(x/m) - 2 * 3^y`, valid for `x >= 3^y`.
pub fn recursive_count_bound(x: u64, y: u64, u_y: &[u64]) -> Result<i128> {
    let three_y = 3u128
        .checked_pow(y as u32)
        .filter(|_| y < 64)
        .ok_or_else(|| Error::Precondition(format!("3^{y} is too large")))?;
    if u128::from(x) < three_y {
        return Err(Error::Precondition(format!("x = {x} is below 3^{y} = {three_y}")));
    }
    if let Some(&m) = u_y.iter().find(|&&m| m == 0 || m > y) {
        return Err(Error::Precondition(format!("{m} is not in [1, {y}]")));
    }
    let primes = primes_upto(x)?;
    let pi = |t: u64| primes.partition_point(|&p| p <= t) as i128;
    let sum: i128 = u_y.iter().map(|&m| pi(x / m)).sum();
    Ok(sum - 2 * three_y as i128)
}

/// One row of the lower-bound report.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundRow {
    pub n: u64,
    pub u_count: u64,
    /// `2^{#U(N)} <= #E_N`.
    pub lower_bound: BigUint,
    /// `(N / log N) prod_{j=3..k} log_j N`, where every factor is positive.
    pub curve: Option<f64>,
}

/// `(N / log N) prod_{j=3..k} log_j N`, or `None` where an iterated log is
/// undefined or nonpositive.
pub fn theorem_curve(n: u64, k: u32) -> Option<f64> {
    let x = n as f64;
    let mut logs = vec![x.ln()];
    for _ in 1..k {
        let last = *logs.last().unwrap();
        if last <= 0.0 {
            return None;
        }
        logs.push(last.ln());
    }
    // logs[j-1] = log_j N
    if logs.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
        return None;
    }
    let product: f64 = logs[2..].iter().product();
    Some(x / logs[0] * product)
}

pub fn lower_bound_report(max_n: u64, k: u32, exact_cap: u64, budget: u64) -> Result<Vec<LowerBoundRow>> {
    if k < 3 {
        return Err(Error::Precondition(format!("k must be at least 3, got {k}")));
    }
    let counted = count_u(max_n, exact_cap.min(max_n), budget)?;
    let values = counted.member_values();
    Ok((1..=max_n)
        .map(|n| {
            let u_count = values.partition_point(|&m| m <= n) as u64;
            LowerBoundRow {
                n,
                u_count,
                lower_bound: BigUint::from(1u32) << u_count,
                curve: theorem_curve(n, k),
            }
        })
        .collect())
}
