use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{parse_rational, pow2};
use crate::error::{Error, Result};
use crate::Rational;

/// Closed interval `[lo, hi]` with exact rational endpoints.
///
/// Every operation returns the exact hull of the pointwise results, so the
/// enclosure property holds without any rounding-mode assumptions. Use
/// [`Interval::round_outward`] to cap endpoint sizes after long chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::point(Rational::from_integer(n.into()))
    }

    pub(crate) fn from_sorted(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Strictly positive on the whole interval.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certainly below `x`: every member is `< x`.
    pub fn lt(&self, x: &Rational) -> bool {
        &self.hi < x
    }

    /// Certainly above `x`: every member is `> x`.
    pub fn gt(&self, x: &Rational) -> bool {
        &self.lo > x
    }

    /// Width at most `2^-bits`.
    pub fn width_within(&self, bits: u32) -> bool {
        self.width() <= Rational::new(BigInt::one(), pow2(bits))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero(self.to_string()));
        }
        Ok(Self {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::point(Rational::one());
        }
        let lo_n = num_traits::pow(self.lo.clone(), n as usize);
        let hi_n = num_traits::pow(self.hi.clone(), n as usize);
        if n % 2 == 1 || !self.lo.is_negative() {
            // monotone on this domain
            return Self::from_sorted(lo_n, hi_n);
        }
        if !self.hi.is_positive() {
            return Self::from_sorted(hi_n, lo_n);
        }
        let top = if lo_n > hi_n { lo_n } else { hi_n };
        Self::from_sorted(Rational::zero(), top)
    }

    /// Widens both endpoints to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = Rational::from_integer(pow2(bits));
        let den = pow2(bits);
        let lo = (&self.lo * &scale).floor().to_integer();
        let hi = (&self.hi * &scale).ceil().to_integer();
        Self {
            lo: Rational::new(lo, den.clone()),
            hi: Rational::new(hi, den),
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Floating-point approximation of the midpoint, for display only.
    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal enclosure `[lo,hi]` with `digits` fractional digits, rounded
    /// outward.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
        let lo = (&self.lo * &scale).floor().to_integer();
        let hi = (&self.hi * &scale).ceil().to_integer();
        format!("[{},{}]", fixed(&lo, digits), fixed(&hi, digits))
    }

    /// Compares two intervals when they are disjoint.
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// `n·10^-digits` in positional notation.
fn fixed(n: &BigInt, digits: u32) -> String {
    let sign = if n.is_negative() { "-" } else { "" };
    let s = n.abs().to_string();
    let d = digits as usize;
    if d == 0 {
        return format!("{sign}{s}");
    }
    let s = format!("{s:0>width$}", width = d + 1);
    let (int, frac) = s.split_at(s.len() - d);
    format!("{sign}{int}.{frac}")
}

impl From<Rational> for Interval {
    fn from(x: Rational) -> Self {
        Self::point(x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("interval must look like [lo,hi]: {s:?}")))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("interval is missing a comma: {s:?}")))?;
        Interval::new(parse_rational(lo)?, parse_rational(hi)?)
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;

    fn add(self, rhs: &'a Interval) -> Interval {
        Interval::from_sorted(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;

    fn sub(self, rhs: &'a Interval) -> Interval {
        Interval::from_sorted(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;

    fn mul(self, rhs: &'a Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().expect("four products");
        let hi = products.iter().max().cloned().expect("four products");
        Interval::from_sorted(lo, hi)
    }
}

impl Neg for &Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::from_sorted(-&self.hi, -&self.lo)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;

            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
