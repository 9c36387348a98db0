use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::Natural;
use crate::error::{Error, Result};

/// Largest prime factor accepted by [`FactoredInteger::factor`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// A positive integer stored as its prime factorisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(prime, exponent)` pairs. Zero exponents are dropped,
    /// repeated primes accumulate.
    pub fn from_factors(pairs: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !super::is_prime(p) {
                return Err(Error::Structural(format!("{p} is not prime")));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self { factors })
    }

    /// Factors `n` by trial division up to [`TRIAL_DIVISION_LIMIT`]. Fails
    /// only when the cofactor left over is too large to be known prime.
    pub fn factor(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("cannot factor 0".into()));
        }
        let mut factors = BTreeMap::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest && d <= TRIAL_DIVISION_LIMIT {
            while rest % d == 0 {
                *factors.entry(d).or_insert(0) += 1;
                rest /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            if d.saturating_mul(d) <= rest {
                return Err(Error::NotSmooth {
                    n: n.to_string(),
                    limit: TRIAL_DIVISION_LIMIT,
                });
            }
            *factors.entry(rest).or_insert(0) += 1;
        }
        Ok(Self { factors })
    }

    /// `lcm(1, ..., m)` in factored form.
    pub fn lcm_range(m: u64) -> Result<Self> {
        let primes = super::primes_upto(m)?;
        let factors = primes
            .into_iter()
            .map(|p| {
                let mut e = 0;
                let mut q = p;
                while q <= m {
                    e += 1;
                    match q.checked_mul(p) {
                        Some(next) => q = next,
                        None => break,
                    }
                }
                (p, e)
            })
            .collect();
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    /// Number of divisors, `prod (e_p + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.values().map(|&e| u64::from(e) + 1).product()
    }

    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    pub fn gcd(&self, other: &FactoredInteger) -> FactoredInteger {
        let factors = self
            .factors
            .iter()
            .filter_map(|(&p, &e)| {
                let m = e.min(other.exponent(p));
                (m > 0).then_some((p, m))
            })
            .collect();
        Self { factors }
    }

    pub fn lcm(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let slot = factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { factors }
    }

    /// All divisors in strictly increasing order.
    pub fn divisors_sorted(&self) -> Vec<Natural> {
        let mut divs = vec![BigUint::one()];
        for (&p, &e) in &self.factors {
            let base = divs.clone();
            let mut pk = BigUint::one();
            for _ in 0..e {
                pk *= p;
                divs.extend(base.iter().map(|d| d * &pk));
            }
        }
        divs.sort();
        divs
    }

    /// Same as [`divisors_sorted`](Self::divisors_sorted) when every divisor fits a `u64`.
    pub fn divisors_u64(&self) -> Result<Vec<u64>> {
        let value = self
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("modulus {}", self.value())))?;
        let mut divs = vec![1u64];
        for (&p, &e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        debug_assert_eq!(divs.last().copied(), Some(value));
        Ok(divs)
    }

    /// Sum of divisors, via multiplicativity.
    pub fn sigma(&self) -> Natural {
        self.factors.iter().fold(BigUint::one(), |acc, (&p, &e)| {
            let p = BigUint::from(p);
            // (p^{e+1} - 1) / (p - 1)
            let term = (p.pow(e + 1) - 1u32) / (&p - 1u32);
            acc * term
        })
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    #[test]
    fn divisor_examples() {
        let d6 = FactoredInteger::factor(6).unwrap().divisors_u64().unwrap();
        assert_eq!(d6, vec![1, 2, 3, 6]);
        let d12 = FactoredInteger::factor(12).unwrap().divisors_u64().unwrap();
        assert_eq!(d12, vec![1, 2, 3, 4, 6, 12]);
        let m = FactoredInteger::factor(5040).unwrap();
        assert_eq!(m.divisors_sorted().len(), 60);
        assert_eq!(m.divisor_count(), 60);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(FactoredInteger::one().sigma(), BigUint::from(1u32));
        assert_eq!(FactoredInteger::factor(12).unwrap().sigma(), BigUint::from(28u32));
        // 31 * 13 * 6 * 8
        assert_eq!(FactoredInteger::factor(5040).unwrap().sigma(), BigUint::from(19344u32));
    }

    #[test]
    fn divisors_agree_with_naive_scan() {
        for n in 1..=10_000u64 {
            let f = FactoredInteger::factor(n).unwrap();
            let divs = f.divisors_u64().unwrap();
            if n <= 2000 {
                assert_eq!(divs, naive_divisors(n), "n = {n}");
            }
            assert!(divs.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(divs.len() as u64, f.divisor_count());
            assert_eq!(BigUint::from(divs.iter().sum::<u64>()), f.sigma(), "n = {n}");
            assert_eq!(f.to_u64(), Some(n));
        }
    }

    #[test]
    fn rejects_non_smooth() {
        // 1_000_003 is prime: one large factor is fine, two are not.
        let f = FactoredInteger::factor(2 * 1_000_003).unwrap();
        assert_eq!(f.exponent(1_000_003), 1);
        assert!(matches!(
            FactoredInteger::factor(1_000_003 * 1_000_003),
            Err(Error::NotSmooth { .. })
        ));
        assert!(FactoredInteger::factor(0).is_err());
        assert!(FactoredInteger::from_factors([(4, 1)]).is_err());
    }

    #[test]
    fn lcm_range_factored() {
        let f = FactoredInteger::lcm_range(10).unwrap();
        assert_eq!(f.to_u64(), Some(2520));
        assert_eq!(f.to_string(), "2^3*3^2*5*7");
        let a = FactoredInteger::factor(12).unwrap();
        let b = FactoredInteger::factor(18).unwrap();
        assert_eq!(a.gcd(&b).to_u64(), Some(6));
        assert_eq!(a.lcm(&b).to_u64(), Some(36));
        assert!(a.divides(&FactoredInteger::factor(5040).unwrap()));
    }
}
