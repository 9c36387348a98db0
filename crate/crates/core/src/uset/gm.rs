use num_bigint::BigUint;

use crate::arith::{lcm_range, Natural};

/// `d_m = lcm(1..m)` and `g_m = d_m * H_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmEntry {
    pub m: u64,
    pub d: Natural,
    pub g: Natural,
    /// Whether `g_m < 3^m` held on exact comparison.
    pub below_three_pow: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GmTable {
    entries: Vec<GmEntry>,
}

/// `g_m` on its own.
pub fn g_m(m: u64) -> Natural {
    let d = lcm_range(m);
    (1..=m).map(|j| &d / BigUint::from(j)).sum()
}

pub fn g_m_table(max_m: u64) -> GmTable {
    let mut entries = Vec::with_capacity(max_m as usize);
    let mut d = BigUint::from(1u32);
    for m in 1..=max_m {
        d = num_integer::Integer::lcm(&d, &BigUint::from(m));
        let g: BigUint = (1..=m).map(|j| &d / BigUint::from(j)).sum();
        let below_three_pow = g < BigUint::from(3u32).pow(m as u32);
        entries.push(GmEntry {
            m,
            d: d.clone(),
            g,
            below_three_pow,
        });
    }
    GmTable { entries }
}

impl GmTable {
    pub fn max_m(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn entry(&self, m: u64) -> Option<&GmEntry> {
        m.checked_sub(1).and_then(|i| self.entries.get(i as usize))
    }

    pub fn entries(&self) -> &[GmEntry] {
        &self.entries
    }

    /// `g_m`, from the table when present.
    pub fn g(&self, m: u64) -> Natural {
        match self.entry(m) {
            Some(e) => e.g.clone(),
            None => g_m(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_entries() {
        let t = g_m_table(3);
        assert_eq!(t.entry(1).unwrap().g, BigUint::from(1u32));
        assert_eq!(t.entry(1).unwrap().d, BigUint::from(1u32));
        assert_eq!(t.entry(2).unwrap().g, BigUint::from(3u32));
        // 6 * (1 + 1/2 + 1/3)
        assert_eq!(t.entry(3).unwrap().d, BigUint::from(6u32));
        assert_eq!(t.entry(3).unwrap().g, BigUint::from(11u32));
        assert!(t.entry(0).is_none());
        assert_eq!(t.g(10), g_m(10));
    }

    #[test]
    fn below_three_pow_up_to_24() {
        let t = g_m_table(24);
        assert!(t.entries().iter().all(|e| e.below_three_pow));
    }
}
