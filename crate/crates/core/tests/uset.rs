use std::collections::HashSet;

use efrac_core::arith::{is_prime, p_adic_valuation, Fraction};
use efrac_core::alpha::{log_lower, log_upper};
use efrac_core::uset::{
    certify_u, count_u, decide_u_exact, g_m_table, recursive_count_bound, CertificateKind,
};
use efrac_core::subsetsum::DEFAULT_MEMORY_BUDGET;
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;

#[test]
fn certificates_agree_with_exhaustive_search() {
    let gm = g_m_table(30);
    for n in 1..=30u64 {
        let decision = decide_u_exact(n, DEFAULT_MEMORY_BUDGET).unwrap();
        if let Some(cert) = certify_u(n, &gm) {
            assert!(decision.member, "{cert} but {n} has a representation");
        }
        if let Some(w) = &decision.witness {
            let sum: Fraction = w
                .iter()
                .enumerate()
                .map(|(k, &c)| Fraction::new(i64::from(c), k as i64 + 1))
                .sum();
            assert_eq!(sum, Fraction::unit(n));
        }
    }
}

#[test]
fn sums_with_small_denominators_are_p_integral() {
    // no signed sum over 1..p-1 has p in its denominator, so 1/p is never reached
    for p in [2u64, 3, 5, 7] {
        let len = (p - 1) as u32;
        let mut seen = HashSet::new();
        for code in 0..3u64.pow(len) {
            let mut c = code;
            let sum: Fraction = (1..p)
                .map(|k| {
                    let w = (c % 3) as i64 - 1;
                    c /= 3;
                    Fraction::new(w, k as i64)
                })
                .sum();
            let den: u64 = sum.denom().try_into().unwrap();
            assert_eq!(p_adic_valuation(den, p), 0, "p = {p}");
            seen.insert(sum);
        }
        assert!(!seen.contains(&Fraction::unit(p)));
    }
}

#[test]
fn lift_threshold_and_lcm_growth() {
    let gm = g_m_table(100);
    let e104 = Fraction::new(104, 100);
    for entry in gm.entries() {
        let m = entry.m;
        if m <= 24 {
            assert!(entry.g < BigUint::from(3u32).pow(m as u32), "m = {m}");
            assert!(entry.below_three_pow);
        }
        // log d_m <= 1.04 m, tested with a certified upper bound on log d_m
        let log_d = log_upper(&entry.d, 64).value;
        assert!(log_d <= &e104 * &Fraction::integer(m), "m = {m}");
        if m > 1 {
            assert!(log_lower(&entry.d, 64).value > Fraction::zero());
        }
        let h: Fraction = (1..=m).map(Fraction::unit).sum();
        assert_eq!(Fraction::integer(BigInt::from(entry.d.clone())) * h, Fraction::integer(BigInt::from(entry.g.clone())));
    }
}

#[test]
fn recursive_bound_is_below_certified_count() {
    let counted = count_u(400, 12, DEFAULT_MEMORY_BUDGET).unwrap();
    let members = counted.member_values();
    for (y, x) in [(1u64, 10u64), (1, 100), (2, 100), (3, 100), (4, 200), (5, 400)] {
        let below: Vec<u64> = members.iter().copied().filter(|&m| m <= y).collect();
        let bound = recursive_count_bound(x, y, &below).unwrap();
        let count = members.iter().filter(|&&m| m <= x).count() as i128;
        assert!(bound <= count, "x = {x}, y = {y}: {bound} > {count}");
    }
    assert!(recursive_count_bound(8, 2, &[1, 2]).is_err());
}

#[test]
fn counted_members_carry_matching_certificates() {
    let counted = count_u(200, 20, DEFAULT_MEMORY_BUDGET).unwrap();
    for cert in &counted.members {
        match cert.kind {
            CertificateKind::One => assert_eq!(cert.n, 1),
            CertificateKind::Prime => assert!(is_prime(cert.n)),
            CertificateKind::Lift { m, p, k } => {
                assert!(is_prime(p));
                assert_eq!(m * p.pow(k), cert.n);
                assert!(counted.member_values().contains(&m));
            }
            CertificateKind::Exhaustive => assert!(cert.n <= 20),
        }
    }
    let primes = (1..=200u64).filter(|&n| is_prime(n)).count() as u64;
    assert!(counted.count() >= 1 + primes);
}
