//! Segmented sieve of Eratosthenes.

use crate::error::{Error, Result};

/// Default upper limit accepted by [`primes_upto`] and [`prime_pi`].
pub const DEFAULT_SIEVE_CAP: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 18;

fn check_cap(x: u64, cap: u64) -> Result<()> {
    if x > cap {
        return Err(Error::CapExceeded {
            what: "sieve limit",
            value: x,
            cap,
        });
    }
    Ok(())
}

fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Calls `visit` on every prime `<= x` in increasing order.
fn for_each_prime(x: u64, mut visit: impl FnMut(u64)) {
    if x < 2 {
        return;
    }
    let root = x.isqrt();
    let base = small_primes(root);
    for &p in &base {
        visit(p);
    }
    let mut low = root + 1;
    let mut marks = vec![false; SEGMENT as usize];
    while low <= x {
        let high = (low + SEGMENT - 1).min(x);
        let len = (high - low + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = low.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= high {
                marks[(j - low) as usize] = true;
                j += p;
            }
        }
        for (offset, &composite) in marks[..len].iter().enumerate() {
            if !composite {
                visit(low + offset as u64);
            }
        }
        low = high + 1;
    }
}

/// All primes `<= x`, increasing. `x` is limited to [`DEFAULT_SIEVE_CAP`].
pub fn primes_upto(x: u64) -> Result<Vec<u64>> {
    primes_upto_capped(x, DEFAULT_SIEVE_CAP)
}

pub fn primes_upto_capped(x: u64, cap: u64) -> Result<Vec<u64>> {
    check_cap(x, cap)?;
    let mut out = Vec::new();
    for_each_prime(x, |p| out.push(p));
    Ok(out)
}

/// Prime-counting function `pi(x)` without materialising the list.
pub fn prime_pi(x: u64) -> Result<u64> {
    check_cap(x, DEFAULT_SIEVE_CAP)?;
    let mut count = 0;
    for_each_prime(x, |_| count += 1);
    Ok(count)
}

/// Trial-division primality test; fine for the small arguments used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(x: u64) -> Vec<u64> {
        (2..=x)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn small_values() {
        assert!(primes_upto(1).unwrap().is_empty());
        assert_eq!(primes_upto(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primes_upto(100).unwrap().len(), 25);
    }

    #[test]
    fn matches_trial_division_across_segments() {
        let x = SEGMENT * 2 + 12_345;
        let sieved = primes_upto(x).unwrap();
        let oracle_count = (2..=x).filter(|&n| is_prime(n)).count();
        assert_eq!(sieved.len(), oracle_count);
        let tail: Vec<u64> = sieved.iter().copied().filter(|&p| p > x - 2000).collect();
        let oracle: Vec<u64> = (x - 1999..=x).filter(|&n| is_prime(n)).collect();
        assert_eq!(tail, oracle);
        assert_eq!(primes_upto(5000).unwrap(), trial_division_primes(5000));
    }

    #[test]
    fn pi_values() {
        assert_eq!(prime_pi(1).unwrap(), 0);
        assert_eq!(prime_pi(2).unwrap(), 1);
        assert_eq!(prime_pi(10_000).unwrap(), 1229);
        assert_eq!(prime_pi(1_000_000).unwrap(), 78_498);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            primes_upto_capped(1000, 999),
            Err(Error::CapExceeded { .. })
        ));
    }
}
