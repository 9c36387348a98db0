use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::log::{log_lower, log_pow2_ratio_lower, log_upper_scaled, MIN_PRECISION_BITS};
use crate::arith::{FactoredInteger, Fraction, Natural};
use crate::density::{delta_from_modulus, profile_from_set};
use crate::error::{Error, Result};
use crate::subsetsum::DivisorChain;

/// Number of fractional digits in [`BoundReport::bound_upper`].
pub const REPORT_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    SingleSet,
    GeneralChain,
    FullDivisor,
    Mixed,
}

impl BoundMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMethod::SingleSet => "single-set",
            BoundMethod::GeneralChain => "general-chain",
            BoundMethod::FullDivisor => "full-divisor",
            BoundMethod::Mixed => "mixed",
        }
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the value used for `r_i` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Exact,
    LemmaA,
    Lifted,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::LemmaA => "lemmaA",
            Provenance::Lifted => "lifted",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(Provenance::Exact),
            "lemmaA" => Some(Provenance::LemmaA),
            "lifted" => Some(Provenance::Lifted),
            _ => None,
        }
    }
}

/// A certified upper bound on the growth constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub modulus: Natural,
    pub exact_modulus: Option<Natural>,
    pub delta: Fraction,
    /// Exact rational upper bound; every log was rounded in the safe direction.
    pub upper: Fraction,
    /// `upper` rounded up to [`REPORT_DIGITS`] decimals.
    pub bound_upper: String,
    pub precision_bits: u32,
    pub r_provenance: Vec<Provenance>,
}

impl BoundReport {
    fn new(
        method: BoundMethod,
        modulus: Natural,
        exact_modulus: Option<Natural>,
        delta: Fraction,
        upper: Fraction,
        precision_bits: u32,
        r_provenance: Vec<Provenance>,
    ) -> Self {
        let bound_upper = upper.to_decimal_ceil(REPORT_DIGITS);
        Self {
            method,
            modulus,
            exact_modulus,
            delta,
            upper,
            bound_upper,
            precision_bits,
            r_provenance,
        }
    }

    /// The bound rounded up to `digits` decimals.
    pub fn display(&self, digits: usize) -> String {
        self.upper.to_decimal_ceil(digits)
    }

    pub fn as_f64(&self) -> f64 {
        self.upper.to_f64()
    }
}

fn check_precision(precision_bits: u32) -> Result<()> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(Error::Precondition(format!(
            "log precision must be at least {MIN_PRECISION_BITS} bits, got {precision_bits}"
        )));
    }
    Ok(())
}

fn check_count(r: &BigUint, size: usize) -> Result<()> {
    if r.is_zero() || r.bits() > size as u64 + 1 || *r > (BigUint::one() << size) {
        return Err(Error::InvalidCount {
            r: r.to_string(),
            size,
        });
    }
    Ok(())
}

fn lcm_of(set: &[u64]) -> Result<FactoredInteger> {
    set.iter().try_fold(FactoredInteger::one(), |acc, &a| {
        Ok(acc.lcm(&FactoredInteger::factor(a)?))
    })
}

/// `log 2 - delta sum_i (1/max a_i - 1/max a_{i+1}) log(2^{#a_i} / r_i)` for
/// strictly nested sets `a_1 ⊂ ... ⊂ a_l`, with `1/max a_{l+1} = 0` and
/// `delta = M / sigma(M)`, `M = lcm(a_l)`.
pub fn general_chain_bound(
    chain_sets: &[Vec<u64>],
    r: &[BigUint],
    precision_bits: u32,
) -> Result<BoundReport> {
    check_precision(precision_bits)?;
    if chain_sets.is_empty() {
        return Err(Error::Structural("chain must contain at least one set".into()));
    }
    if chain_sets.len() != r.len() {
        return Err(Error::Structural(format!(
            "{} sets but {} counts",
            chain_sets.len(),
            r.len()
        )));
    }
    let mut sorted: Vec<Vec<u64>> = Vec::with_capacity(chain_sets.len());
    for set in chain_sets {
        let mut s = set.clone();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s[0] == 0 || s.len() != set.len() {
            return Err(Error::Structural(
                "each set must be nonempty with distinct positive elements".into(),
            ));
        }
        sorted.push(s);
    }
    for (i, w) in sorted.windows(2).enumerate() {
        let strict = w[1].len() > w[0].len() && w[0].iter().all(|a| w[1].binary_search(a).is_ok());
        if !strict {
            return Err(Error::Structural(format!(
                "set {} is not a strict subset of set {}",
                i + 1,
                i + 2
            )));
        }
    }
    for (set, r) in sorted.iter().zip(r) {
        check_count(r, set.len())?;
    }
    let top = sorted.last().unwrap();
    let m = lcm_of(top)?;
    debug_assert_eq!(profile_from_set(top)?.modulus(), m);
    let delta = delta_from_modulus(&m);

    let mut sum = Fraction::zero();
    for (i, (set, r)) in sorted.iter().zip(r).enumerate() {
        let max_here = *set.last().unwrap();
        let coeff = match sorted.get(i + 1) {
            Some(next) => Fraction::unit(max_here) - Fraction::unit(*next.last().unwrap()),
            None => Fraction::unit(max_here),
        };
        if coeff.is_zero() {
            continue;
        }
        sum = sum + coeff * log_pow2_ratio_lower(set.len() as u64, r, precision_bits);
    }
    let ln2_up = super::log::log_upper(&BigUint::from(2u32), precision_bits).value;
    let upper = ln2_up - &delta * &sum;
    let method = if sorted.len() == 1 {
        BoundMethod::SingleSet
    } else {
        BoundMethod::GeneralChain
    };
    Ok(BoundReport::new(
        method,
        m.value(),
        None,
        delta,
        upper,
        precision_bits,
        vec![Provenance::Exact; sorted.len()],
    ))
}

/// The one-set case `log 2 - delta / max(a) * log(2^{#a} / r)`.
pub fn single_set_bound(set: &[u64], r: &BigUint, precision_bits: u32) -> Result<BoundReport> {
    general_chain_bound(&[set.to_vec()], std::slice::from_ref(r), precision_bits)
}

/// `delta sum_i (1/a_i - 1/a_{i+1}) log r_i` over all divisors `a_1 < ... < a_l`
/// of `M`; `r` holds one count (or upper estimate) per divisor prefix.
pub fn full_divisor_bound(m: &FactoredInteger, r: &[BigUint], precision_bits: u32) -> Result<BoundReport> {
    full_divisor_bound_tagged(m, r, vec![Provenance::Exact; r.len()], None, precision_bits)
}

fn full_divisor_bound_tagged(
    m: &FactoredInteger,
    r: &[BigUint],
    provenance: Vec<Provenance>,
    exact_modulus: Option<Natural>,
    precision_bits: u32,
) -> Result<BoundReport> {
    check_precision(precision_bits)?;
    let divisors = m.divisors_u64()?;
    if r.len() != divisors.len() {
        return Err(Error::Structural(format!(
            "{} counts supplied for {} divisors of {}",
            r.len(),
            divisors.len(),
            m.value()
        )));
    }
    if let Some(i) = r.iter().position(|x| x.is_zero()) {
        return Err(Error::InvalidCount {
            r: "0".into(),
            size: i + 1,
        });
    }
    let modulus = divisors[divisors.len() - 1];
    // With common denominator M the coefficients are integers:
    // M (1/a_i - 1/a_{i+1}) = M/a_i - M/a_{i+1}.
    let terms: Vec<BigInt> = (0..divisors.len())
        .into_par_iter()
        .map(|i| {
            let here = modulus / divisors[i];
            let next = divisors.get(i + 1).map_or(0, |&a| modulus / a);
            let coeff = here - next;
            if coeff == 0 {
                BigInt::zero()
            } else {
                log_upper_scaled(&r[i], precision_bits) * BigInt::from(coeff)
            }
        })
        .collect();
    let total: BigInt = terms.into_iter().sum();
    let sigma = BigInt::from(m.sigma());
    let denom = sigma << precision_bits;
    let upper = Fraction::new(total, denom);
    Ok(BoundReport::new(
        if exact_modulus.is_some() {
            BoundMethod::Mixed
        } else {
            BoundMethod::FullDivisor
        },
        m.value(),
        exact_modulus,
        delta_from_modulus(m),
        upper,
        precision_bits,
        provenance,
    ))
}

/// `1 + sum_{k<=i} L_i / a_k`, an upper bound for `r_i` on a full divisor chain.
pub fn lemma_a_bound(chain: &DivisorChain, i: usize) -> Result<Natural> {
    if i == 0 || i > chain.len() {
        return Err(Error::Precondition(format!(
            "prefix index {i} outside 1..={}",
            chain.len()
        )));
    }
    Ok(chain.scaled_sum(i) + 1u32)
}

/// [`lemma_a_bound`] for every prefix, computed incrementally.
pub fn lemma_a_bounds(chain: &DivisorChain) -> Vec<Natural> {
    let mut out = Vec::with_capacity(chain.len());
    let mut sum = BigUint::zero();
    let mut prev_l = 1u64;
    for i in 1..=chain.len() {
        let l = chain.prefix_lcm(i);
        sum = sum * (l / prev_l) + (l / chain.element(i));
        prev_l = l;
        out.push(&sum + 1u32);
    }
    out
}

/// Per-divisor estimates of the mixed method together with their provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedEstimate {
    pub values: Vec<Natural>,
    pub provenance: Vec<Provenance>,
}

/// How the exactly counted prefix `a'_1 < ... < a'_j` of the divisors of `M'`
/// is matched to a divisor `a_i` of `M`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiftRule {
    /// Largest `a'_j <= a_i`: every divisor of `M'` up to `a_i` is in the
    /// prefix `a_i`, so this is the longest exact prefix available.
    #[default]
    LargestBelow,
    /// Largest `a'_j` dividing `a_i`, i.e. `gcd(a_i, M')`.
    LargestDivisor,
}

/// For each divisor `a_i` of `M`: `min(lemma A, r'_j 2^{i-j})`, with `j`
/// chosen by `rule`.
pub fn mixed_estimates(
    m: &FactoredInteger,
    m_exact: &FactoredInteger,
    exact_counts: &[u64],
    rule: LiftRule,
) -> Result<MixedEstimate> {
    if !m_exact.divides(m) {
        return Err(Error::Structural(format!(
            "exact modulus {} does not divide {}",
            m_exact.value(),
            m.value()
        )));
    }
    let chain = DivisorChain::of_modulus(m)?;
    let small = m_exact.divisors_u64()?;
    if exact_counts.len() != small.len() {
        return Err(Error::Structural(format!(
            "{} exact counts supplied for {} divisors of {}",
            exact_counts.len(),
            small.len(),
            m_exact.value()
        )));
    }
    let m_small = small[small.len() - 1];
    let index: HashMap<u64, usize> = small.iter().enumerate().map(|(j, &d)| (d, j + 1)).collect();
    let lemma_a = lemma_a_bounds(&chain);
    let pairs: Vec<(Natural, Provenance)> = (1..=chain.len())
        .into_par_iter()
        .map(|i| {
            let a = chain.element(i);
            let j = match rule {
                LiftRule::LargestBelow => small.partition_point(|&d| d <= a),
                LiftRule::LargestDivisor => index[&crate::arith::gcd_u64(a, m_small)],
            };
            let lifted = BigUint::from(exact_counts[j - 1]) << (i - j);
            let bound = &lemma_a[i - 1];
            if lifted <= *bound {
                let tag = if i == j {
                    Provenance::Exact
                } else {
                    Provenance::Lifted
                };
                (lifted, tag)
            } else {
                (bound.clone(), Provenance::LemmaA)
            }
        })
        .collect();
    let (values, provenance) = pairs.into_iter().unzip();
    Ok(MixedEstimate { values, provenance })
}

/// Full-divisor bound for a large `M` using exact counts only on the divisors
/// of `M' | M` and estimates elsewhere.
pub fn mixed_bound(
    m: &FactoredInteger,
    m_exact: &FactoredInteger,
    exact_counts: &[u64],
    precision_bits: u32,
) -> Result<BoundReport> {
    mixed_bound_with(m, m_exact, exact_counts, LiftRule::default(), precision_bits)
}

pub fn mixed_bound_with(
    m: &FactoredInteger,
    m_exact: &FactoredInteger,
    exact_counts: &[u64],
    rule: LiftRule,
    precision_bits: u32,
) -> Result<BoundReport> {
    let est = mixed_estimates(m, m_exact, exact_counts, rule)?;
    full_divisor_bound_tagged(
        m,
        &est.values,
        est.provenance,
        Some(m_exact.value()),
        precision_bits,
    )
}

/// `log 2` rounded down; handy for sanity checks on reports.
pub fn ln2_lower(precision_bits: u32) -> Fraction {
    log_lower(&BigUint::from(2u32), precision_bits).value
}

/// Shorthand used by callers that hold counts as machine words.
pub fn to_naturals(r: &[u64]) -> Vec<Natural> {
    r.iter().map(|&x| BigUint::from(x)).collect()
}
