//! 2-adic integers at finite precision.
//!
//! A [`PadicInt`] of precision N stores the binary digits of
//! Σ_{i=1}^{N} u_i 2^{i−1}, least significant first, so it is an element of
//! ℤ/2^N. Differences that vanish in all N digits are reported with the
//! [`Valuation::Infinite`] sentinel: equal as far as the precision can see.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::coherent::IndexSequence;
use crate::error::{Error, Result};
use crate::fock::Letter;

/// Default precision N.
pub const DEFAULT_PRECISION: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    digits: Vec<u8>,
}

/// 2-adic valuation; `Infinite` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u64(*v as u64),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl PadicInt {
    pub fn zero(precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        Ok(Self {
            digits: vec![0; precision],
        })
    }

    /// Digits least significant first; the precision is the slice length.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        if let Some(&bad) = digits.iter().find(|&&d| d > 1) {
            return Err(Error::InvalidLetter(bad.into()));
        }
        Ok(Self {
            digits: digits.to_vec(),
        })
    }

    /// Nonnegative integer `value < 2^precision`.
    pub fn from_integer(value: &BigUint, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if value.bits() > precision as u64 {
            return Err(Error::IntegerOutOfRange(value.to_string(), precision));
        }
        let digits = (0..precision as u64).map(|i| value.bit(i) as u8).collect();
        Ok(Self { digits })
    }

    pub fn from_u64(value: u64, precision: usize) -> Result<Self> {
        Self::from_integer(&BigUint::from(value), precision)
    }

    /// Σ_{i=1}^{N} u_i 2^{i−1}: the first N digits of the sequence.
    pub fn from_sequence(sequence: &IndexSequence, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let digits = (0..precision).map(|i| sequence.digit0(i).bit()).collect();
        Ok(Self { digits })
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Coefficient of 2^{index}.
    pub fn digit(&self, index: usize) -> Option<Letter> {
        self.digits
            .get(index)
            .map(|&d| if d == 0 { Letter::Zero } else { Letter::One })
    }

    /// Representative in [0, 2^N).
    pub fn to_integer(&self) -> BigUint {
        let mut value = BigUint::zero();
        for (i, &d) in self.digits.iter().enumerate() {
            if d == 1 {
                value.set_bit(i as u64, true);
            }
        }
        value
    }

    /// Same number at a lower precision.
    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if precision > self.precision() {
            return Err(Error::PrecisionShortfall {
                required: precision,
                available: self.precision(),
            });
        }
        Ok(Self {
            digits: self.digits[..precision].to_vec(),
        })
    }

    pub fn padd(&self, other: &PadicInt) -> PadicInt {
        let n = self.precision().min(other.precision());
        let mut carry = 0u8;
        let digits = (0..n)
            .map(|i| {
                let s = self.digits[i] + other.digits[i] + carry;
                carry = s >> 1;
                s & 1
            })
            .collect();
        PadicInt { digits }
    }

    pub fn psub(&self, other: &PadicInt) -> PadicInt {
        let n = self.precision().min(other.precision());
        let mut borrow = 0i8;
        let digits = (0..n)
            .map(|i| {
                let mut d = self.digits[i] as i8 - other.digits[i] as i8 - borrow;
                borrow = 0;
                if d < 0 {
                    d += 2;
                    borrow = 1;
                }
                d as u8
            })
            .collect();
        PadicInt { digits }
    }

    pub fn negate(&self) -> PadicInt {
        PadicInt {
            digits: vec![0; self.precision()],
        }
        .psub(self)
    }

    /// Index of the lowest nonzero digit.
    pub fn valuation(&self) -> Valuation {
        self.digits
            .iter()
            .position(|&d| d != 0)
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    /// v with |a − b|₂ = 2^{−v}, at the smaller of the two precisions.
    pub fn distance_exponent(&self, other: &PadicInt) -> Valuation {
        // the lowest digit of a − b is nonzero exactly where a and b first differ
        self.digits
            .iter()
            .zip(&other.digits)
            .position(|(a, b)| a != b)
            .map_or(Valuation::Infinite, Valuation::Finite)
    }
}

impl Add for &PadicInt {
    type Output = PadicInt;

    fn add(self, rhs: &PadicInt) -> PadicInt {
        self.padd(rhs)
    }
}

impl Sub for &PadicInt {
    type Output = PadicInt;

    fn sub(self, rhs: &PadicInt) -> PadicInt {
        self.psub(rhs)
    }
}

impl FromStr for PadicInt {
    type Err = Error;

    /// Digit string, least significant first: `"1100"` is 3 at precision 4.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| Letter::try_from(c).map(Letter::bit))
            .collect::<Result<Vec<_>>>()?;
        Self::from_digits(&digits)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Closed ball {x : |x − center|₂ ≤ 2^{−k}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicBall {
    center: PadicInt,
    radius_exponent: usize,
}

impl PadicBall {
    pub fn new(center: PadicInt, radius_exponent: usize) -> Result<Self> {
        if radius_exponent > center.precision() {
            return Err(Error::PrecisionShortfall {
                required: radius_exponent,
                available: center.precision(),
            });
        }
        Ok(Self {
            center,
            radius_exponent,
        })
    }

    pub fn center(&self) -> &PadicInt {
        &self.center
    }

    pub fn radius_exponent(&self) -> usize {
        self.radius_exponent
    }

    /// True iff the first k digits of `x` match the center's.
    pub fn contains(&self, x: &PadicInt) -> Result<bool> {
        let k = self.radius_exponent;
        if x.precision() < k {
            return Err(Error::PrecisionShortfall {
                required: k,
                available: x.precision(),
            });
        }
        Ok(x.digits[..k] == self.center.digits[..k])
    }
}
