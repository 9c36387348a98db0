//! Exact sum sets: the Egyptian-fraction sets `E_N` and the reachable-set
//! counts `r_i` along a chain of prefixes.

mod chain;
mod egyptian;
mod reachable;
mod signed;

pub use chain::DivisorChain;
pub use egyptian::{egyptian_set, enumerate_egyptian, EgyptianSet};
pub use reachable::ReachableSet;
pub use signed::{
    signed_set_cardinality_check, signed_set_sizes, SignedCheckReport, SignedCheckRow,
    SIGNED_ENUMERATION_CAP,
};

use crate::error::Result;

/// Default memory budget for the exact engines: 8 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

/// `r_1, ..., r_l` for the prefixes of `chain`.
///
/// One [`ReachableSet`] is carried along the chain: when the prefix lcm grows
/// it is stretched to the new scale, then OR-ed with itself shifted by the
/// scaled weight `L_i / a_i` of the new element.
pub fn chain_counts(chain: &DivisorChain, budget: u64) -> Result<Vec<u64>> {
    let mut set = ReachableSet::new();
    let mut counts = Vec::with_capacity(chain.len());
    for i in 1..=chain.len() {
        let stage = || format!("prefix index {i}");
        let l = chain.prefix_lcm(i);
        set.rescale(l, budget, &stage)?;
        set.add_weight(l / chain.element(i), budget, &stage)?;
        counts.push(set.count());
    }
    Ok(counts)
}

/// Curve data for `log #E_N / N` and `log #E_N / (N / log N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub n: u64,
    pub card: u64,
    pub log_card_over_n: f64,
    /// Undefined at `N = 1`, where `log N = 0`.
    pub log_card_over_n_over_log_n: Option<f64>,
}

pub fn sum_set_stats(max_n: u64, budget: u64) -> Result<Vec<CurvePoint>> {
    let cards = enumerate_egyptian(max_n, budget)?;
    Ok(cards
        .into_iter()
        .zip(1u64..)
        .map(|(card, n)| {
            let log_card = (card as f64).ln();
            let nf = n as f64;
            CurvePoint {
                n,
                card,
                log_card_over_n: log_card / nf,
                log_card_over_n_over_log_n: (n >= 2).then(|| log_card / (nf / nf.ln())),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FactoredInteger;

    #[test]
    fn chain_count_examples() {
        let c6 = DivisorChain::of_u64(6).unwrap();
        assert_eq!(chain_counts(&c6, u64::MAX).unwrap(), vec![2, 4, 8, 13]);
        let c12 = DivisorChain::of_u64(12).unwrap();
        assert_eq!(*chain_counts(&c12, u64::MAX).unwrap().last().unwrap(), 29);
        let single = DivisorChain::from_elements(vec![1]).unwrap();
        assert_eq!(chain_counts(&single, u64::MAX).unwrap(), vec![2]);
    }

    #[test]
    fn incremental_matches_per_prefix_recomputation() {
        let m = FactoredInteger::factor(360).unwrap();
        let chain = DivisorChain::of_modulus(&m).unwrap();
        let incremental = chain_counts(&chain, u64::MAX).unwrap();
        for i in 1..=chain.len() {
            // rebuild prefix i directly at its own scale
            let l = chain.prefix_lcm(i);
            let mut set = ReachableSet::new();
            set.rescale(l, u64::MAX, &|| String::new()).unwrap();
            for k in 1..=i {
                set.add_weight(l / chain.element(k), u64::MAX, &|| String::new()).unwrap();
            }
            assert_eq!(set.count(), incremental[i - 1], "prefix {i}");
            assert_eq!(Some(set.max_index()), chain.scaled_sum_u64(i));
        }
    }

    #[test]
    fn chain_budget_names_prefix() {
        let chain = DivisorChain::of_u64(5040).unwrap();
        let err = chain_counts(&chain, 64).unwrap_err();
        match err {
            crate::Error::Resource { stage, .. } => assert!(stage.starts_with("prefix index")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn curve_points() {
        let pts = sum_set_stats(6, u64::MAX).unwrap();
        assert_eq!(pts[0].log_card_over_n_over_log_n, None);
        assert!((pts[0].log_card_over_n - 2f64.ln()).abs() < 1e-15);
        let second = pts[1].log_card_over_n_over_log_n.unwrap();
        assert!((second - 0.4805).abs() < 1e-4);
        assert_eq!(pts[5].card, 52);
    }
}
