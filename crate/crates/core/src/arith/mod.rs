//! Exact integer and rational arithmetic, divisor utilities and prime sieving.

mod factor;
mod fraction;
mod sieve;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

pub use factor::{FactoredInteger, TRIAL_DIVISION_LIMIT};
pub use fraction::Fraction;
pub use sieve::{is_prime, prime_pi, primes_upto, primes_upto_capped, DEFAULT_SIEVE_CAP};

/// Nonnegative integer of unbounded size.
pub type Natural = BigUint;

/// `lcm(1, ..., m)`.
pub fn lcm_range(m: u64) -> Natural {
    (1..=m).fold(BigUint::one(), |acc, k| acc.lcm(&BigUint::from(k)))
}

/// Largest `e` with `p^e | n`. Requires `n >= 1` and `p >= 2`.
pub fn p_adic_valuation(mut n: u64, p: u64) -> u32 {
    assert!(n >= 1 && p >= 2, "valuation needs n >= 1 and p >= 2");
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `gcd` for machine words.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
