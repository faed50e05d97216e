//! Exact rationals and a few integer helpers shared across the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, ToPrimitive};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    t.parse::<Rational>()
        .map_err(|_| Error::Parse(format!("invalid rational `{t}`")))
        .and_then(|r| {
            if t.contains('/') && t.split('/').nth(1).map_or(false, |d| d.trim() == "0") {
                Err(Error::Parse(format!("zero denominator in `{t}`")))
            } else {
                Ok(r)
            }
        })
}

pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// `r` as an `i64` when it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Numerator of `r * scale` when the product is integral.
pub(crate) fn scaled_numer(r: &Rational, scale: u32) -> Option<i64> {
    to_i64(&(r * int(scale as i64)))
}

/// Denominator of `r` as a `u32`.
pub(crate) fn denom_u32(r: &Rational) -> u32 {
    r.denom().to_u32().expect("denominator out of range")
}

pub(crate) fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("value out of range")
}

pub(crate) fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("value out of range")
}

/// Rational power `base^e` for integer `e` (base must be nonzero when `e < 0`).
pub fn rational_pow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num::pow::pow(base.clone(), e as usize)
    } else {
        num::pow::pow(base.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(fmt_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(rational_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(floor_i64(&rat(-3, 2)), -2);
        assert_eq!(ceil_i64(&rat(-3, 2)), -1);
    }
}
