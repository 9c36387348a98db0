use std::collections::HashSet;

use crate::arith::Fraction;
use crate::error::{Error, Result};

/// Hard cap on `N` for the direct signed enumeration.
pub const SIGNED_ENUMERATION_CAP: u64 = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCheckRow {
    pub n: u64,
    pub signed: u64,
    pub egyptian: u64,
}

impl SignedCheckRow {
    pub fn matches(&self) -> bool {
        self.signed == self.egyptian
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCheckReport {
    pub rows: Vec<SignedCheckRow>,
}

impl SignedCheckReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(SignedCheckRow::matches)
    }
}

/// Sizes of `S_n = {sum s_k / k : s ∈ {-1, +1}^n}` for `n <= max_n`, built
/// directly over exact rationals.
pub fn signed_set_sizes(max_n: u64) -> Result<Vec<u64>> {
    if max_n > SIGNED_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "N",
            value: max_n,
            cap: SIGNED_ENUMERATION_CAP,
        });
    }
    let mut set: HashSet<Fraction> = HashSet::from([Fraction::zero()]);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let w = Fraction::unit(n);
        let mut next = HashSet::with_capacity(set.len() * 2);
        for x in &set {
            next.insert(x + &w);
            next.insert(x - &w);
        }
        set = next;
        out.push(set.len() as u64);
    }
    Ok(out)
}

/// Compares `#S_n` with `#E_n` for every `n <= max_n`.
pub fn signed_set_cardinality_check(max_n: u64, budget: u64) -> Result<SignedCheckReport> {
    let signed = signed_set_sizes(max_n)?;
    let egyptian = super::enumerate_egyptian(max_n, budget)?;
    let rows = signed
        .into_iter()
        .zip(egyptian)
        .zip(1..)
        .map(|((signed, egyptian), n)| SignedCheckRow { n, signed, egyptian })
        .collect();
    Ok(SignedCheckReport { rows })
}
