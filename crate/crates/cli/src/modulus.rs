//! Modulus expressions: `5040`, `2^4*3^2*5*7`, `lcm(1..17)`, `2*3*lcm(1..19)`.

use efrac_core::arith::FactoredInteger;

use crate::error::{CliError, Result};

fn factor_term(term: &str) -> Result<FactoredInteger> {
    let usage = |msg: String| CliError::Usage(format!("modulus term {term:?}: {msg}"));
    if let Some(inner) = term.strip_prefix("lcm(").and_then(|t| t.strip_suffix(')')) {
        let (lo, hi) = inner
            .split_once("..")
            .ok_or_else(|| usage("expected lcm(1..m)".into()))?;
        if lo.trim() != "1" {
            return Err(usage("only ranges starting at 1 are supported".into()));
        }
        let m: u64 = hi.trim().parse().map_err(|_| usage("bad upper end".into()))?;
        if m == 0 {
            return Err(usage("range must be nonempty".into()));
        }
        return Ok(FactoredInteger::lcm_range(m)?);
    }
    let (base, exp) = match term.split_once('^') {
        Some((b, e)) => (b, e.trim().parse::<u32>().map_err(|_| usage("bad exponent".into()))?),
        None => (term, 1),
    };
    let base: u64 = base.trim().parse().map_err(|_| usage("not an integer".into()))?;
    if base == 0 {
        return Err(usage("modulus must be positive".into()));
    }
    let f = FactoredInteger::factor(base)?;
    Ok(FactoredInteger::from_factors(
        f.factors().iter().map(|(&p, &e)| (p, e * exp)),
    )?)
}

pub fn parse_modulus(expr: &str) -> Result<FactoredInteger> {
    let expr: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if expr.is_empty() {
        return Err(CliError::Usage("empty modulus".into()));
    }
    let mut acc = FactoredInteger::one();
    for term in expr.split('*') {
        let f = factor_term(term)?;
        let merged = acc
            .factors()
            .iter()
            .map(|(&p, &e)| (p, e))
            .chain(f.factors().iter().map(|(&p, &e)| (p, e)));
        acc = FactoredInteger::from_factors(merged)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_modulus("5040").unwrap().to_u64(), Some(5040));
        assert_eq!(parse_modulus("2^4*3^2*5*7").unwrap().to_u64(), Some(5040));
        assert_eq!(parse_modulus("lcm(1..17)").unwrap().to_u64(), Some(12_252_240));
        assert_eq!(
            parse_modulus("2*3*lcm(1..10)").unwrap().to_u64(),
            Some(2520 * 6)
        );
        assert_eq!(parse_modulus("1").unwrap().to_u64(), Some(1));
    }

    #[test]
    fn rejects() {
        for bad in ["", "0", "lcm(2..5)", "abc", "2^x", "lcm(1..0)"] {
            assert!(parse_modulus(bad).is_err(), "{bad:?}");
        }
    }
}
