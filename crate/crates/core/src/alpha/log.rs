//! Natural logarithms of positive integers with one-sided, certified error.
//!
//! `log n = k log 2 + 2 atanh((n - 2^k) / (n + 2^k))` with `2^k <= n < 2^{k+1}`,
//! and `log 2 = 2 atanh(1/3)`. Both series are summed in fixed point twice:
//! once with every operation rounded down (plus truncation, giving a lower
//! bound) and once rounded up (plus a geometric tail bound, giving an upper
//! bound). The enclosure is then rounded outward onto the `2^-P` grid.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Fraction;

/// Smallest precision accepted for bound evaluation.
pub const MIN_PRECISION_BITS: u32 = 64;

/// An upper bound `value >= log n` with `value - log n <= 2^-precision_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogUpper {
    pub value: Fraction,
    pub precision_bits: u32,
}

/// A lower bound `value <= log n` with `log n - value <= 2^-precision_bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogLower {
    pub value: Fraction,
    pub precision_bits: u32,
}

fn div_ceil(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Enclosure of `atanh(num/den)` in units of `2^-w`, for `0 <= num/den <= 1/3`.
fn atanh_enclosure(num: &BigUint, den: &BigUint, w: u64) -> (BigUint, BigUint) {
    let unit = BigUint::one() << w;
    let scaled = num << w;
    let y_lo = &scaled / den;
    let y_hi = div_ceil(&scaled, den);

    let mut lo = BigUint::zero();
    let y2_lo = (&y_lo * &y_lo) >> w;
    let mut power = y_lo;
    let mut k = 0u64;
    while !power.is_zero() {
        lo += &power / BigUint::from(2 * k + 1);
        power = (&power * &y2_lo) >> w;
        k += 1;
    }

    let mut hi = BigUint::zero();
    let y2_hi = div_ceil(&(&y_hi * &y_hi), &unit);
    let mut power = y_hi;
    let mut k = 0u64;
    while power > BigUint::one() {
        hi += div_ceil(&power, &BigUint::from(2 * k + 1));
        power = div_ceil(&(&power * &y2_hi), &unit);
        k += 1;
    }
    // remaining terms are at most power * sum y^{2j} <= power / (1 - 1/9)
    hi += div_ceil(&(&power * 9u32), &BigUint::from(8u32));
    (lo, hi)
}

/// Enclosure `[lo, hi]` of `log n` in units of `2^-w`.
fn log_enclosure(n: &BigUint, w: u64) -> (BigUint, BigUint) {
    debug_assert!(!n.is_zero());
    let k = n.bits() - 1;
    let (ln2_lo, ln2_hi) = atanh_enclosure(&BigUint::one(), &BigUint::from(3u32), w);
    let pow = BigUint::one() << k;
    let (t_lo, t_hi) = atanh_enclosure(&(n - &pow), &(n + &pow), w);
    let lo = ((ln2_lo * k) + t_lo) << 1;
    let hi = ((ln2_hi * k) + t_hi) << 1;
    (lo, hi)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Up,
    Down,
}

/// Rounds the enclosure of `log n` onto the `2^-p` grid in direction `side`.
///
/// The result `v` satisfies: the true value is within `2^-p` of `v` on the
/// correct side, and it is at least `2^-(p+g)` away from `v`. The second
/// condition makes the rounded value monotone in `p`: any enclosure at a
/// higher precision lies strictly inside `v`'s side.
fn rounded_log(n: &BigUint, p: u32, side: Side) -> BigInt {
    if n.is_one() {
        return BigInt::zero();
    }
    let k_bits = n.bits().max(2).ilog2() as u64 + 1;
    let mut guard = 32u64;
    loop {
        let shift = guard + k_bits + 16;
        let w = u64::from(p) + shift;
        let (lo, hi) = log_enclosure(n, w);
        let margin = BigUint::one() << (shift - guard);
        let cell = BigUint::one() << shift;
        if &hi - &lo < margin {
            let ok_and_value = match side {
                Side::Up => {
                    let v = div_ceil(&hi, &cell);
                    let top = &v << shift;
                    let ok = lo > &top - &cell && &hi + &margin <= top;
                    (ok, v)
                }
                Side::Down => {
                    let v = &lo >> shift;
                    let bottom = &v << shift;
                    let ok = hi < &bottom + &cell && lo >= &bottom + &margin;
                    (ok, v)
                }
            };
            if let (true, v) = ok_and_value {
                return BigInt::from(v);
            }
        }
        guard *= 2;
    }
}

/// Certified upper bound on `log n`, `n >= 1`.
pub fn log_upper(n: &BigUint, precision_bits: u32) -> LogUpper {
    assert!(!n.is_zero(), "log of zero");
    let v = rounded_log(n, precision_bits, Side::Up);
    LogUpper {
        value: Fraction::dyadic(v, u64::from(precision_bits)),
        precision_bits,
    }
}

/// Certified lower bound on `log n`, `n >= 1`.
pub fn log_lower(n: &BigUint, precision_bits: u32) -> LogLower {
    assert!(!n.is_zero(), "log of zero");
    let v = rounded_log(n, precision_bits, Side::Down);
    LogLower {
        value: Fraction::dyadic(v, u64::from(precision_bits)),
        precision_bits,
    }
}

/// Upper bound on `log n` as an integer numerator over `2^precision_bits`.
pub(crate) fn log_upper_scaled(n: &BigUint, precision_bits: u32) -> BigInt {
    rounded_log(n, precision_bits, Side::Up)
}

/// Certified lower bound on `log(2^s / r)` for `1 <= r <= 2^s`; exact zero
/// when `r = 2^s`.
pub fn log_pow2_ratio_lower(s: u64, r: &BigUint, precision_bits: u32) -> Fraction {
    let t = r.trailing_zeros().unwrap_or(0);
    let odd = r >> t;
    let two = BigUint::from(2u32);
    let ln2_lo = log_lower(&two, precision_bits).value;
    let pow_part = &ln2_lo * &Fraction::integer(s - t);
    if odd.is_one() {
        pow_part
    } else {
        pow_part - log_upper(&odd, precision_bits).value
    }
}
