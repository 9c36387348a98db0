use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fraction(BigRational);

impl Fraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Fraction(BigRational::new(num.into(), den))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction(BigRational::from_integer(n.into()))
    }

    /// `1/n`.
    pub fn unit(n: impl Into<BigInt>) -> Self {
        Self::new(1, n)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Fraction(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Fraction(self.0.recip())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `num * 2^-shift` for a nonnegative dyadic value.
    pub fn dyadic(num: BigInt, shift: u64) -> Self {
        Fraction(BigRational::new(num, BigInt::one() << shift))
    }

    /// Decimal expansion with `digits` fractional digits, rounded toward +infinity.
    pub fn to_decimal_ceil(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = Fraction(&self.0 * BigRational::from_integer(scale)).ceil();
        format_scaled(scaled, digits)
    }

    /// Decimal expansion with `digits` fractional digits, rounded toward -infinity.
    pub fn to_decimal_floor(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = Fraction(&self.0 * BigRational::from_integer(scale)).floor();
        format_scaled(scaled, digits)
    }

    /// Nearest `f64`; only for display and plotting data.
    pub fn to_f64(&self) -> f64 {
        let (num, den) = (self.0.numer(), self.0.denom());
        let shift = num.bits().max(den.bits()).saturating_sub(60);
        let n = (num >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = (den >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    }
}

fn format_scaled(scaled: BigInt, digits: usize) -> String {
    let negative = scaled.sign() == Sign::Minus;
    let mut body = scaled.abs().to_string();
    if body.len() <= digits {
        body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
    }
    let split = body.len() - digits;
    let (int, frac) = body.split_at(split);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl From<BigRational> for Fraction {
    fn from(r: BigRational) -> Self {
        Fraction(r)
    }
}

impl From<u64> for Fraction {
    fn from(n: u64) -> Self {
        Fraction::integer(n)
    }
}

impl From<BigUint> for Fraction {
    fn from(n: BigUint) -> Self {
        Fraction::integer(BigInt::from(n))
    }
}

impl FromStr for Fraction {
    type Err = String;

    /// Parses `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let den: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Fraction::new(num, den))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'a Fraction) -> Fraction {
                Fraction((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'a Fraction) -> Fraction {
                Fraction(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl std::iter::Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = Fraction::new(6, -4);
        assert_eq!(f.to_string(), "-3/2");
        assert_eq!(Fraction::new(0, 7), Fraction::zero());
        assert_eq!(Fraction::zero().denom(), &BigInt::one());
    }

    #[test]
    fn decimal_rounding_is_directed() {
        let third = Fraction::new(1, 3);
        assert_eq!(third.to_decimal_ceil(4), "0.3334");
        assert_eq!(third.to_decimal_floor(4), "0.3333");
        assert_eq!(Fraction::new(-1, 3).to_decimal_ceil(2), "-0.33");
        assert_eq!(Fraction::new(5, 2).to_decimal_ceil(0), "3");
        assert_eq!(Fraction::new(1, 200).to_decimal_ceil(3), "0.005");
    }

    #[test]
    fn parse() {
        assert_eq!("12/28".parse::<Fraction>().unwrap(), Fraction::new(3, 7));
        assert_eq!("5".parse::<Fraction>().unwrap(), Fraction::integer(5));
        assert!("1/0".parse::<Fraction>().is_err());
    }
}
