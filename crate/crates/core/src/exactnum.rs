//! Exact rational scalars and the rank-two value group `Q ⊕ Z·Ω`.
//!
//! Coefficients live in `Q` throughout the crate. Values of half-branch
//! valuations are pairs `k·Ω + q` ordered lexicographically with the
//! `Ω`-part dominant, plus a top element `∞` for the support.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Serde adapter storing a [`Rational`] as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

/// Strict sign of an element at an ordering; `Zero` marks support membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(s: i8) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_i8(-self.as_i8())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

/// Element of `(Q ⊕ Z·Ω) ∪ {∞}`.
///
/// The `Ω` coefficient is non-negative for values of polynomials; quotients
/// of rational functions may carry a negative one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite { omega: i64, finite: Rational },
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite {
            omega: 0,
            finite: Rational::zero(),
        }
    }

    pub fn new(omega: i64, finite: Rational) -> Self {
        ExtValue::Finite { omega, finite }
    }

    pub fn rational(q: Rational) -> Self {
        ExtValue::new(0, q)
    }

    pub fn int(n: i64) -> Self {
        ExtValue::new(0, int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    /// `true` for values strictly above `0`, including `∞`.
    pub fn is_positive(&self) -> bool {
        *self > ExtValue::zero()
    }

    pub fn omega_part(&self) -> Option<i64> {
        match self {
            ExtValue::Finite { omega, .. } => Some(*omega),
            ExtValue::Infinite => None,
        }
    }

    pub fn finite_part(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite { finite, .. } => Some(finite),
            ExtValue::Infinite => None,
        }
    }

    /// `a − b`; `None` when `b` is infinite.
    pub fn checked_sub(&self, other: &ExtValue) -> Option<ExtValue> {
        match (self, other) {
            (_, ExtValue::Infinite) => None,
            (ExtValue::Infinite, _) => Some(ExtValue::Infinite),
            (
                ExtValue::Finite { omega: a, finite: p },
                ExtValue::Finite { omega: b, finite: q },
            ) => Some(ExtValue::new(a - b, p - q)),
        }
    }

    /// `n·v` for a natural multiplier.
    pub fn scale(&self, n: u32) -> ExtValue {
        match self {
            ExtValue::Infinite if n == 0 => ExtValue::zero(),
            ExtValue::Infinite => ExtValue::Infinite,
            ExtValue::Finite { omega, finite } => {
                ExtValue::new(omega * i64::from(n), finite * int(i64::from(n)))
            }
        }
    }
}

/// Total order with `∞` on top and the `Ω`-part dominant.
pub fn ext_value_compare(a: &ExtValue, b: &ExtValue) -> Ordering {
    match (a, b) {
        (ExtValue::Infinite, ExtValue::Infinite) => Ordering::Equal,
        (ExtValue::Infinite, _) => Ordering::Greater,
        (_, ExtValue::Infinite) => Ordering::Less,
        (
            ExtValue::Finite { omega: ka, finite: qa },
            ExtValue::Finite { omega: kb, finite: qb },
        ) => ka.cmp(kb).then_with(|| qa.cmp(qb)),
    }
}

pub fn ext_value_add(a: &ExtValue, b: &ExtValue) -> ExtValue {
    match (a, b) {
        (ExtValue::Infinite, _) | (_, ExtValue::Infinite) => ExtValue::Infinite,
        (
            ExtValue::Finite { omega: ka, finite: qa },
            ExtValue::Finite { omega: kb, finite: qb },
        ) => ExtValue::new(ka + kb, qa + qb),
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        ext_value_compare(self, other)
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: ExtValue) -> ExtValue {
        ext_value_add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtValue> for &'a ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: &ExtValue) -> ExtValue {
        ext_value_add(self, rhs)
    }
}

impl Sub for ExtValue {
    type Output = ExtValue;
    /// Panics when subtracting `∞`.
    fn sub(self, rhs: ExtValue) -> ExtValue {
        self.checked_sub(&rhs).expect("cannot subtract an infinite value")
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Infinite => f.write_str("inf"),
            ExtValue::Finite { omega, finite } => match (*omega, finite.is_zero()) {
                (0, _) => f.write_str(&format_rational(finite)),
                (k, true) => write!(f, "{}", omega_term(k)),
                (k, false) => {
                    if finite.is_negative() {
                        write!(f, "{} - {}", omega_term(k), format_rational(&-finite))
                    } else {
                        write!(f, "{} + {}", omega_term(k), format_rational(finite))
                    }
                }
            },
        }
    }
}

fn omega_term(k: i64) -> String {
    match k {
        1 => "Ω".to_string(),
        -1 => "-Ω".to_string(),
        k => format!("{k}Ω"),
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtValue::Infinite => s.serialize_str("inf"),
            ExtValue::Finite { omega, finite } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("omega", omega)?;
                m.serialize_entry("finite", &format_rational(finite))?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Pair { omega: i64, finite: String },
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "inf" => Ok(ExtValue::Infinite),
            Raw::Tag(t) => Err(de::Error::custom(format!("unknown value tag {t:?}"))),
            Raw::Pair { omega, finite } => Ok(ExtValue::new(
                omega,
                parse_rational(&finite).map_err(de::Error::custom)?,
            )),
        }
    }
}
