//! Exact rational scalars.
//!
//! Every matrix entry in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! floating point anywhere in the computation paths; decimal input is parsed
//! as an exact fraction over a power of ten.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer, mostly for tests and constructors.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

/// Renders a rational as `p` or `p/q`, matching the input grammar.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or a decimal like `0.25` into an exact rational.
///
/// Decimals become numerator/10^digits with no rounding, so `0.25` is exactly
/// `1/4` and `1.10` equals `11/10`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |message: &str| Error::ParseError {
        line: 0,
        column: 0,
        message: format!("{message}: {text:?}"),
    };
    if s.is_empty() {
        return Err(fail("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| fail("invalid numerator"))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| fail("invalid denominator"))?;
        if q.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || frac_part.chars().any(|c| !c.is_ascii_digit()) {
            return Err(fail("invalid decimal"));
        }
        let (sign, digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if digits.chars().any(|c| !c.is_ascii_digit()) {
            return Err(fail("invalid decimal"));
        }
        let joined = format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac_part);
        let numer: BigUint = joined.parse().map_err(|_| fail("invalid decimal"))?;
        let denom = BigUint::from(10u32).pow(frac_part.len() as u32);
        let value = Rational::new(BigInt::from(numer), BigInt::from(denom));
        return Ok(if sign < 0 { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| fail("invalid integer"))?;
    Ok(Rational::from_integer(p))
}

/// Carrier check helper: `x >= 0`.
pub fn is_nonnegative(x: &Rational) -> bool {
    !Signed::is_negative(x)
}

/// Serde adapter storing a rational as the exact string `p` or `p/q`.
pub mod serde_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals as exact strings.
pub mod serde_string_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
