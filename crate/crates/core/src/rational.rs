//! Exact rational arithmetic used throughout the crate.
//!
//! Every quantity that enters an order check or an envelope construction is a
//! [`Q`] (an arbitrary-precision rational). Floating-point inputs are promoted
//! verbatim, i.e. the rational equals the IEEE-754 value bit for bit, so all
//! downstream comparisons stay exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Shorthand for `n/d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qu(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Promotes a finite float to the rational it represents exactly.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_f64(x).expect("finite float required")
}

/// Nearest-double rendering of a rational.
pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().expect("rational convertible to f64")
}

/// The value as a `u32` when it is a small nonnegative integer.
pub fn to_u32(x: &Q) -> Option<u32> {
    if x.is_integer() {
        x.to_u32()
    } else {
        None
    }
}

/// `x^e` for a (possibly negative) integer exponent.
pub fn pow_i(x: &Q, e: i32) -> Q {
    x.pow(e)
}

/// `x^e` for an arbitrary rational exponent, evaluated in floating point.
pub fn pow_q(x: &Q, e: &Q) -> f64 {
    if e.is_integer() {
        if let Some(i) = e.to_i32() {
            return to_f64(&pow_i(x, i));
        }
    }
    to_f64(x).powf(to_f64(e))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatioError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"3"`, `"-3/4"` or a decimal literal like `"1.25"` exactly.
pub fn parse_ratio(s: &str) -> Result<Q, ParseRatioError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatioError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseRatioError::ZeroDenominator(s.to_string()));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| ParseRatioError::Invalid(s.to_string()))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRatioError::Invalid(s.to_string()));
        }
        let f: BigInt = frac
            .parse()
            .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Q::from_integer(i) + Q::new(f, scale) * qi(sign));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
    Ok(Q::from_integer(n))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_ratio(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Absolute value.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}
