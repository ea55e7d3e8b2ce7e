//! Exact rationals, backed by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses `"p"` or `"p/q"` with decimal integers; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn sign(odd: bool) -> Rational {
    int(if odd { -1 } else { 1 })
}
