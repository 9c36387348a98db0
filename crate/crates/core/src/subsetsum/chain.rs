use num_integer::Integer;

use crate::arith::{FactoredInteger, Natural};
use crate::error::{Error, Result};

/// Increasing elements `a_1 < ... < a_l` together with the prefix lcms
/// `L_i = lcm(a_1, ..., a_i)`. Prefix `i` (1-based) is the set `{a_1, ..., a_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorChain {
    modulus: u64,
    elements: Vec<u64>,
    prefix_lcm: Vec<u64>,
}

impl DivisorChain {
    /// The chain of all divisors of `m`.
    pub fn of_modulus(m: &FactoredInteger) -> Result<Self> {
        Self::from_elements(m.divisors_u64()?)
    }

    pub fn of_u64(m: u64) -> Result<Self> {
        Self::of_modulus(&FactoredInteger::factor(m)?)
    }

    /// Any strictly increasing list of positive integers.
    pub fn from_elements(elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Structural("chain must be nonempty".into()));
        }
        if elements[0] == 0 {
            return Err(Error::Structural("chain elements must be positive".into()));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Structural(format!(
                "chain elements must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let mut prefix_lcm = Vec::with_capacity(elements.len());
        let mut l = 1u64;
        for &a in &elements {
            let g = l.gcd(&a);
            l = (l / g)
                .checked_mul(a)
                .ok_or_else(|| Error::Overflow(format!("lcm of chain prefix ending at {a}")))?;
            prefix_lcm.push(l);
        }
        Ok(Self {
            modulus: l,
            elements,
            prefix_lcm,
        })
    }

    /// `lcm` of all elements; equals `M` for a full divisor chain.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn prefix_lcms(&self) -> &[u64] {
        &self.prefix_lcm
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `a_i`, 1-based.
    pub fn element(&self, i: usize) -> u64 {
        self.elements[i - 1]
    }

    /// `L_i`, 1-based.
    pub fn prefix_lcm(&self, i: usize) -> u64 {
        self.prefix_lcm[i - 1]
    }

    /// `sum_{k<=i} L_i / a_k`: the largest scaled sum of prefix `i`.
    pub fn scaled_sum(&self, i: usize) -> Natural {
        let l = self.prefix_lcm(i);
        self.elements[..i]
            .iter()
            .map(|&a| Natural::from(l / a))
            .sum()
    }

    /// Same as [`scaled_sum`](Self::scaled_sum) in machine words, if it fits.
    pub fn scaled_sum_u64(&self, i: usize) -> Option<u64> {
        let l = self.prefix_lcm(i);
        self.elements[..i]
            .iter()
            .try_fold(0u64, |acc, &a| acc.checked_add(l / a))
    }
}
