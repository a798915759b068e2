//! Exact rational scalars and their string form.
//!
//! Every scalar in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. On the wire
//! rationals are strings, `"p/q"` or `"p"` when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"p"`, with optional surrounding whitespace and sign.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let value = Rational::from_str(t).map_err(|_| bad())?;
    Ok(value)
}

/// `"p/q"`, or `"p"` when `q = 1`.
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer power with possibly negative exponent. Fails on `0^k`, `k < 0`.
pub fn powi(r: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        let mut acc = one();
        for _ in 0..exp {
            acc *= r;
        }
        return Ok(acc);
    }
    if r.is_zero() {
        return Err(Error::Singular("zero raised to a negative power".into()));
    }
    powi(&r.recip(), -exp)
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

/// Serde adapters for rationals stored as strings.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form_round_trips() {
        assert_eq!(to_string(&frac(6, -4)), "-3/2");
        assert_eq!(to_string(&int(7)), "7");
        assert_eq!(parse(" -3/2 ").unwrap(), frac(-3, 2));
        assert_eq!(parse("4/2").unwrap(), int(2));
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(powi(&frac(2, 3), -2).unwrap(), frac(9, 4));
        assert_eq!(powi(&int(5), 0).unwrap(), one());
        assert!(powi(&zero(), -1).is_err());
    }
}
