use num_bigint::BigInt;

use crate::arith::Fraction;
use crate::error::{Error, Result};

/// The set of all sums `sum_{k<=n} t_k / k`, `t_k ∈ {0, 1}`.
///
/// Every element is stored as its numerator over the common denominator
/// `lcm(1, ..., n)`, so distinct rationals are distinct integers and the set
/// is a sorted, deduplicated vector.
#[derive(Clone, Debug)]
pub struct EgyptianSet {
    n: u64,
    scale: u64,
    values: Vec<u64>,
}

impl Default for EgyptianSet {
    fn default() -> Self {
        Self::new()
    }
}

impl EgyptianSet {
    /// The empty-sum set `{0}`, i.e. `n = 0`.
    pub fn new() -> Self {
        Self {
            n: 0,
            scale: 1,
            values: vec![0],
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Common denominator `lcm(1, ..., n)`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn scaled_values(&self) -> &[u64] {
        &self.values
    }

    pub fn elements(&self) -> impl Iterator<Item = Fraction> + '_ {
        self.values
            .iter()
            .map(|&v| Fraction::new(BigInt::from(v), BigInt::from(self.scale)))
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        let scaled = x * &Fraction::integer(self.scale);
        if !scaled.denom().eq(&BigInt::from(1)) || scaled.is_negative() {
            return false;
        }
        match u64::try_from(scaled.numer().clone()) {
            Ok(v) => self.values.binary_search(&v).is_ok(),
            Err(_) => false,
        }
    }

    /// Bytes needed to go from the current set to the next one.
    fn step_bytes(&self) -> u128 {
        // old vector plus a merged vector of up to twice the size
        (self.values.len() as u128) * 3 * 8
    }

    /// `E_n = E_{n-1} ∪ (E_{n-1} + 1/n)`.
    pub fn extend(&mut self, budget: u64) -> Result<()> {
        let n = self.n + 1;
        let needed = self.step_bytes();
        if needed > u128::from(budget) {
            return Err(Error::Resource {
                stage: format!("N = {n}"),
                needed,
                budget,
            });
        }
        let g = num_integer::gcd(self.scale, n);
        let factor = n / g;
        let overflow = || Error::Overflow(format!("scaled sums at N = {n}"));
        let scale = self.scale.checked_mul(factor).ok_or_else(overflow)?;
        let max = *self.values.last().unwrap();
        max.checked_mul(factor)
            .and_then(|m| m.checked_add(scale / n))
            .ok_or_else(overflow)?;
        if factor > 1 {
            self.values.iter_mut().for_each(|v| *v *= factor);
        }
        let shift = scale / n;
        self.values = merge_shifted(&self.values, shift);
        self.scale = scale;
        self.n = n;
        Ok(())
    }
}

/// Sorted union of `xs` and `xs + shift`, both already sorted.
fn merge_shifted(xs: &[u64], shift: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(xs.len() * 2);
    let (mut i, mut j) = (0, 0);
    while i < xs.len() || j < xs.len() {
        let next = match (xs.get(i), xs.get(j).map(|&y| y + shift)) {
            (Some(&a), Some(b)) if a < b => {
                i += 1;
                a
            }
            (Some(&a), Some(b)) if a == b => {
                i += 1;
                j += 1;
                a
            }
            (Some(_), Some(b)) | (None, Some(b)) => {
                j += 1;
                b
            }
            (Some(&a), None) => {
                i += 1;
                a
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// `#E_1, ..., #E_max_n`.
pub fn enumerate_egyptian(max_n: u64, budget: u64) -> Result<Vec<u64>> {
    let mut set = EgyptianSet::new();
    let mut out = Vec::with_capacity(max_n as usize);
    for _ in 0..max_n {
        set.extend(budget)?;
        out.push(set.len() as u64);
    }
    Ok(out)
}

/// The set `E_n` itself.
pub fn egyptian_set(n: u64, budget: u64) -> Result<EgyptianSet> {
    let mut set = EgyptianSet::new();
    for _ in 0..n {
        set.extend(budget)?;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn first_values() {
        assert_eq!(enumerate_egyptian(1, u64::MAX).unwrap(), vec![2]);
        assert_eq!(
            enumerate_egyptian(6, u64::MAX).unwrap(),
            vec![2, 4, 8, 16, 32, 52]
        );
        assert_eq!(*enumerate_egyptian(12, u64::MAX).unwrap().last().unwrap(), 1856);
    }

    #[test]
    fn matches_rational_subset_enumeration() {
        for n in 1..=12u64 {
            let mut oracle = HashSet::new();
            for mask in 0u32..(1 << n) {
                let s: Fraction = (1..=n)
                    .filter(|k| mask >> (k - 1) & 1 == 1)
                    .map(Fraction::unit)
                    .sum();
                oracle.insert(s);
            }
            let set = egyptian_set(n, u64::MAX).unwrap();
            let got: HashSet<Fraction> = set.elements().collect();
            assert_eq!(got, oracle, "n = {n}");
        }
    }

    #[test]
    fn contains_zero_and_harmonic_number() {
        let set = egyptian_set(9, u64::MAX).unwrap();
        let h: Fraction = (1..=9u64).map(Fraction::unit).sum();
        assert!(set.contains(&Fraction::zero()));
        assert!(set.contains(&h));
        assert!(!set.contains(&(h + Fraction::unit(10u64))));
        assert!(!set.contains(&Fraction::unit(11u64)));
    }

    #[test]
    fn budget_error_names_n() {
        let err = enumerate_egyptian(20, 1 << 12).unwrap_err();
        match err {
            Error::Resource { stage, .. } => assert!(stage.starts_with("N = ")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn merge_handles_collisions() {
        assert_eq!(merge_shifted(&[0, 1, 3], 2), vec![0, 1, 2, 3, 5]);
        assert_eq!(merge_shifted(&[0], 0), vec![0]);
    }
}
