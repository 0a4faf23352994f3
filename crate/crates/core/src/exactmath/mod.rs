//! Exact rational arithmetic helpers, Bernoulli numbers, and rigorous
//! enclosures of π, e and n-th roots.
//!
//! Nothing here touches binary floating point: enclosures keep exact
//! rational endpoints and are widened to dyadic rationals when their
//! representation needs to be bounded.

mod bernoulli;
mod constants;
mod interval;
mod precision;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bernoulli::bernoulli;
pub use constants::{
    e_interval, nth_root_interval, nth_root_of_interval, pi_interval, smallest_integer_above,
    Bounded,
};
pub use interval::Interval;
pub use precision::{
    certify_start, refine, to_width, Precision, CERTIFY_START_BITS, DEFAULT_MAX_BITS, MIN_BITS,
};

use crate::error::{Error, Result};
use crate::Rational;

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Either an exact rational or a certified enclosure of a real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    Enclosed(Interval),
}

impl Value {
    pub fn as_interval(&self) -> Interval {
        match self {
            Value::Exact(q) => Interval::point(q.clone()),
            Value::Enclosed(iv) => iv.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_positive(),
            Value::Enclosed(iv) => iv.is_positive(),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Enclosed(iv) => iv.approx(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Enclosed(iv) => write!(f, "{iv}"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            Ok(Value::Enclosed(s.parse()?))
        } else {
            Ok(Value::Exact(parse_rational(s)?))
        }
    }
}

impl<'a> From<&'a Value> for Bounded<'a> {
    fn from(v: &'a Value) -> Self {
        match v {
            Value::Exact(q) => Bounded::Exact(q),
            Value::Enclosed(iv) => Bounded::Enclosed(iv),
        }
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `p/q`, `p`, or a finite decimal such as `-0.125` or `1e-9`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.contains('/') {
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}0")
        .parse()
        .map_err(|_| bad())?;
    let digits = digits / BigInt::from(10);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}
