use std::fmt;

use num_bigint::BigUint;

use super::decide::{decide_u_exact, EXACT_DECISION_CAP};
use super::gm::GmTable;
use crate::arith::{is_prime, p_adic_valuation, FactoredInteger};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    One,
    Prime,
    /// `n = m p^k` with `m` a certified member and `p > g_m` prime.
    Lift { m: u64, p: u64, k: u32 },
    /// The exhaustive search found no representation of `1/n`.
    Exhaustive,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::One => "one",
            CertificateKind::Prime => "prime",
            CertificateKind::Lift { .. } => "lift",
            CertificateKind::Exhaustive => "exhaustive",
        }
    }
}

/// Proof that `n` lies in `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UCertificate {
    pub n: u64,
    pub kind: CertificateKind,
}

impl fmt::Display for UCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CertificateKind::Lift { m, p, k } if k == 1 => write!(f, "{} = {m}*{p} (lift)", self.n),
            CertificateKind::Lift { m, p, k } => write!(f, "{} = {m}*{p}^{k} (lift)", self.n),
            kind => write!(f, "{} ({})", self.n, kind.name()),
        }
    }
}

/// Options for [`certify_u_with`].
#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Largest `n` for which the exhaustive search may be used.
    pub exact_cap: u64,
    pub budget: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            exact_cap: 0,
            budget: crate::subsetsum::DEFAULT_MEMORY_BUDGET,
        }
    }
}

fn three_pow_exceeded_by(p: u64, m: u64) -> bool {
    // 3^40 > u64::MAX / 2 bounds every prime we can meet here
    m < 40 && u128::from(p) > 3u128.pow(m as u32)
}

/// Certificate from the rules alone (1, primes, lifts); no search.
pub fn certify_u(n: u64, gm: &GmTable) -> Option<UCertificate> {
    certify_u_with(n, gm, CertifyOptions::default()).ok().flatten()
}

/// Certificate for `n ∈ U` if one of the rules applies, falling back to the
/// exhaustive search when `n <= exact_cap`. `None` does not mean `n ∉ U`.
pub fn certify_u_with(n: u64, gm: &GmTable, opts: CertifyOptions) -> Result<Option<UCertificate>> {
    if n == 0 {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(UCertificate {
            n,
            kind: CertificateKind::One,
        }));
    }
    if is_prime(n) {
        return Ok(Some(UCertificate {
            n,
            kind: CertificateKind::Prime,
        }));
    }
    if let Some(kind) = lift(n, gm, opts)? {
        return Ok(Some(UCertificate { n, kind }));
    }
    let cap = opts.exact_cap.min(EXACT_DECISION_CAP);
    if n <= cap && decide_u_exact(n, opts.budget)?.member {
        return Ok(Some(UCertificate {
            n,
            kind: CertificateKind::Exhaustive,
        }));
    }
    Ok(None)
}

fn lift(n: u64, gm: &GmTable, opts: CertifyOptions) -> Result<Option<CertificateKind>> {
    let Ok(factored) = FactoredInteger::factor(n) else {
        return Ok(None);
    };
    // largest prime first: it gives the smallest cofactor m
    for &p in factored.factors().keys().rev() {
        let k = p_adic_valuation(n, p);
        let m = n / p.pow(k);
        let admissible = three_pow_exceeded_by(p, m) || BigUint::from(p) > gm.g(m);
        if admissible && certify_u_with(m, gm, opts)?.is_some() {
            return Ok(Some(CertificateKind::Lift { m, p, k }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uset::g_m_table;

    #[test]
    fn examples() {
        let gm = g_m_table(10);
        assert_eq!(certify_u(13, &gm).unwrap().kind, CertificateKind::Prime);
        assert_eq!(certify_u(1, &gm).unwrap().kind, CertificateKind::One);
        assert_eq!(
            certify_u(10, &gm).unwrap().kind,
            CertificateKind::Lift { m: 2, p: 5, k: 1 }
        );
        // prime powers lift from m = 1 (g_1 = 1)
        assert_eq!(
            certify_u(8, &gm).unwrap().kind,
            CertificateKind::Lift { m: 1, p: 2, k: 3 }
        );
        // 6 = 2*3 with g_2 = 3: no rule applies, and 6 is not a member
        assert_eq!(certify_u(6, &gm), None);
        let opts = CertifyOptions {
            exact_cap: 10,
            ..Default::default()
        };
        assert_eq!(certify_u_with(6, &gm, opts).unwrap(), None);
    }

    #[test]
    fn display() {
        let c = UCertificate {
            n: 50,
            kind: CertificateKind::Lift { m: 2, p: 5, k: 2 },
        };
        assert_eq!(c.to_string(), "50 = 2*5^2 (lift)");
    }
}
