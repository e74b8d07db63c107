//! Text and JSON forms of exact rationals.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Scalar;

/// A rational as a pair of integer strings. `den` is always positive and the
/// fraction is reduced when produced by [`RationalJson::from`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Scalar> for RationalJson {
    fn from(value: &Scalar) -> Self {
        Self {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Scalar {
    type Error = Error;

    fn try_from(value: &RationalJson) -> Result<Scalar> {
        let bad = || Error::MalformedRational(format!("{}/{}", value.num, value.den));
        let num = BigInt::from_str(&value.num).map_err(|_| bad())?;
        let den = BigInt::from_str(&value.den).map_err(|_| bad())?;
        if !den.is_positive() {
            return Err(bad());
        }
        Ok(Scalar::new(num, den))
    }
}

/// Parses `"p/q"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let bad = || Error::MalformedRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Renders a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering truncated toward zero after `digits` fractional digits.
/// Presentation only.
pub fn to_decimal(value: &Scalar, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (value.numer() * &scale) / value.denom();
    render_scaled(scaled.sign() == Sign::Minus, scaled.magnitude(), digits)
}

/// Decimal rendering of `sqrt(value)` for a nonnegative rational, truncated
/// after `digits` fractional digits. Presentation only.
pub fn sqrt_to_decimal(value: &Scalar, digits: u32) -> String {
    assert!(!value.is_negative(), "square root of a negative rational");
    let scale = BigUint::from(10u32).pow(2 * digits);
    let radicand = (value.numer().magnitude() * scale) / value.denom().magnitude();
    render_scaled(false, &num_integer::Roots::sqrt(&radicand), digits)
}

fn render_scaled(negative: bool, magnitude: &BigUint, digits: u32) -> String {
    let text = format!("{:0>width$}", magnitude, width = digits as usize + 1);
    let (int_part, frac_part) = text.split_at(text.len() - digits as usize);
    let sign = if negative && !magnitude.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
