//! Natural density of integers whose `p`-adic valuations are divisible by
//! prescribed exponents `mu_p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::{is_prime, p_adic_valuation, FactoredInteger, Fraction};
use crate::error::{Error, Result};

/// Exponents `mu_p >= 1`; primes not listed have `mu_p = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValuationProfile {
    mu: BTreeMap<u64, u32>,
}

impl ValuationProfile {
    pub fn new(entries: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut mu = BTreeMap::new();
        for (p, m) in entries {
            if !is_prime(p) {
                return Err(Error::Structural(format!("{p} is not prime")));
            }
            if m == 0 {
                return Err(Error::Structural(format!("mu_{p} must be at least 1")));
            }
            if m > 1 {
                mu.insert(p, m);
            }
        }
        Ok(Self { mu })
    }

    pub fn mu(&self, p: u64) -> u32 {
        self.mu.get(&p).copied().unwrap_or(1)
    }

    /// Primes with `mu_p > 1`.
    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.mu
    }

    /// `M = prod p^{mu_p - 1}`.
    pub fn modulus(&self) -> FactoredInteger {
        FactoredInteger::from_factors(self.mu.iter().map(|(&p, &m)| (p, m - 1)))
            .expect("profile keys are prime")
    }

    /// The profile whose modulus is `m`: `mu_p = 1 + v_p(m)`.
    pub fn of_modulus(m: &FactoredInteger) -> Self {
        Self {
            mu: m.factors().iter().map(|(&p, &e)| (p, e + 1)).collect(),
        }
    }

    /// Whether `n` lies in the constrained set `D`.
    pub fn admits(&self, n: u64) -> bool {
        self.mu
            .iter()
            .all(|(&p, &m)| p_adic_valuation(n, p) % m == 0)
    }
}

/// `mu_p = 1 + max_{a ∈ set} v_p(a)`; the resulting modulus is `lcm(set)`.
pub fn profile_from_set(set: &[u64]) -> Result<ValuationProfile> {
    if set.is_empty() {
        return Err(Error::Precondition("set must be nonempty".into()));
    }
    let mut lcm = FactoredInteger::one();
    for &a in set {
        if a == 0 {
            return Err(Error::Precondition("set elements must be positive".into()));
        }
        lcm = lcm.lcm(&FactoredInteger::factor(a)?);
    }
    Ok(ValuationProfile::of_modulus(&lcm))
}

/// `prod_p (1 - 1/p) / (1 - p^{-mu_p})`, exactly.
pub fn delta_from_profile(profile: &ValuationProfile) -> Fraction {
    profile
        .entries()
        .iter()
        .fold(Fraction::one(), |acc, (&p, &m)| {
            let pm = BigInt::from(p).pow(m);
            // (1 - 1/p) / (1 - p^-m) = (p - 1) p^{m-1} / (p^m - 1)
            let num = BigInt::from(p - 1) * BigInt::from(p).pow(m - 1);
            acc * Fraction::new(num, pm - 1)
        })
}

/// `M / sigma(M)`.
pub fn delta_from_modulus(m: &FactoredInteger) -> Fraction {
    Fraction::new(BigInt::from(m.value()), BigInt::from(m.sigma()))
}

/// `#{n <= x : n ∈ D} / x`.
pub fn empirical_density(profile: &ValuationProfile, x: u64) -> Result<Fraction> {
    if x == 0 {
        return Err(Error::Precondition("x must be positive".into()));
    }
    let count = (1..=x).filter(|&n| profile.admits(n)).count();
    Ok(Fraction::new(count as u64, x))
}
