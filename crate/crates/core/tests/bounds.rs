use efrac_core::alpha::{
    full_divisor_bound, general_chain_bound, lemma_a_bounds, log_lower, log_upper, mixed_estimates,
    to_naturals, LiftRule,
};
use efrac_core::arith::{FactoredInteger, Fraction};
use efrac_core::subsetsum::{chain_counts, DivisorChain, DEFAULT_MEMORY_BUDGET};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn counts(m: u64) -> Vec<u64> {
    chain_counts(&DivisorChain::of_u64(m).unwrap(), DEFAULT_MEMORY_BUDGET).unwrap()
}

#[test]
fn lemma_a_dominates_exact_counts() {
    for m in (1..=2000u64).chain([2520, 5040, 7560, 10000]) {
        let chain = DivisorChain::of_u64(m).unwrap();
        let exact = chain_counts(&chain, DEFAULT_MEMORY_BUDGET).unwrap();
        for (i, (bound, r)) in lemma_a_bounds(&chain).iter().zip(&exact).enumerate() {
            assert!(*bound >= BigUint::from(*r), "M = {m}, i = {}", i + 1);
        }
    }
}

#[test]
fn lifted_estimates_dominate_exact_counts() {
    for m in [360u64, 720, 1260, 2520, 5040] {
        let big = FactoredInteger::factor(m).unwrap();
        let exact = counts(m);
        for small in big.divisors_u64().unwrap() {
            let fs = FactoredInteger::factor(small).unwrap();
            for rule in [LiftRule::LargestBelow, LiftRule::LargestDivisor] {
                let est = mixed_estimates(&big, &fs, &counts(small), rule).unwrap();
                for (i, (e, r)) in est.values.iter().zip(&exact).enumerate() {
                    assert!(*e >= BigUint::from(*r), "M = {m}, M' = {small}, {rule:?}, i = {}", i + 1);
                }
            }
        }
    }
}

#[test]
fn divisor_chain_form_equals_telescoped_form() {
    for m in [12u64, 60, 360, 5040] {
        let f = FactoredInteger::factor(m).unwrap();
        let divisors = f.divisors_u64().unwrap();
        let sets: Vec<Vec<u64>> = (1..=divisors.len()).map(|i| divisors[..i].to_vec()).collect();
        let r = to_naturals(&counts(m));
        let chain = general_chain_bound(&sets, &r, 96).unwrap();
        let full = full_divisor_bound(&f, &r, 96).unwrap();
        let gap = (chain.upper - full.upper).abs();
        assert!(gap < Fraction::dyadic(1.into(), 80), "M = {m}");
    }
}

#[test]
fn bounds_tighten_with_more_precision() {
    let f = FactoredInteger::factor(5040).unwrap();
    let r = to_naturals(&counts(5040));
    let mut last = full_divisor_bound(&f, &r, 64).unwrap().upper;
    for bits in [80, 96, 128, 192] {
        let next = full_divisor_bound(&f, &r, bits).unwrap().upper;
        assert!(next <= last, "{bits} bits");
        last = next;
    }
}

#[test]
fn bound_never_exceeds_log_two() {
    let ln2 = log_upper(&BigUint::from(2u32), 64).value;
    for m in [1u64, 2, 6, 12, 60, 360] {
        let f = FactoredInteger::factor(m).unwrap();
        let report = full_divisor_bound(&f, &to_naturals(&counts(m)), 64).unwrap();
        assert!(report.upper <= ln2, "M = {m}");
    }
}

proptest! {
    #[test]
    fn log_enclosure_is_tight(n in 1u64.., bits in 64u32..160) {
        let n = BigUint::from(n);
        let hi = log_upper(&n, bits).value;
        let lo = log_lower(&n, bits).value;
        prop_assert!(lo <= hi);
        prop_assert!(&hi - &lo <= Fraction::dyadic(2.into(), u64::from(bits)));
        let approx = (n.bits() as f64 - 1.0) * std::f64::consts::LN_2
            + (n.to_string().parse::<f64>().unwrap() / 2f64.powi(n.bits() as i32 - 1)).ln();
        prop_assert!((hi.to_f64() - approx).abs() < 1e-9);
    }

    #[test]
    fn log_of_power_of_two_is_enclosed(k in 0u64..500) {
        let n = BigUint::one() << k;
        let ln2_lo = log_lower(&BigUint::from(2u32), 128).value;
        let ln2_hi = log_upper(&BigUint::from(2u32), 128).value;
        let k = Fraction::integer(k);
        prop_assert!(log_upper(&n, 64).value >= &k * &ln2_lo);
        prop_assert!(log_lower(&n, 64).value <= &k * &ln2_hi);
    }
}
