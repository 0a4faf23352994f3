//! The unit ball `B^n`: its constants `C_p = (p+1)/(n+1)`, the
//! Bakker–Tsimerman bound and the dimension threshold for general type.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{check_range, Error, Result};
use crate::exactmath::{
    certify_start, integer, pi_interval, rational, refine, smallest_integer_above, to_width,
    Interval, Precision,
};
use crate::Rational;

/// `C_p = (p+1)/(n+1)` for `1 <= p <= n`.
pub fn ball_c(n: u32, p: u32) -> Result<Rational> {
    check_range("n", n as u64, 1, u32::MAX as u64)?;
    check_range("p", p as u64, 1, n as u64)?;
    Ok(rational(p as i64 + 1, n as i64 + 1))
}

/// Enclosure of `(n+1)/(2π)` of width at most `2^-bits`.
pub fn bakker_tsimerman_alpha(n: u32, prec: Precision) -> Result<Interval> {
    check_range("n", n as u64, 1, u32::MAX as u64)?;
    to_width(prec, |inner| {
        let two_pi = pi_interval(inner)?.scale(&integer(2));
        Ok(two_pi.recip()?.scale(&integer(n as i64 + 1)))
    })
}

/// Least integer above `2π/d`, certified by refinement.
fn integer_above_two_pi_over(d: u32, prec: Precision) -> Result<BigInt> {
    let scale = rational(2, d as i64);
    refine(certify_start(prec), |p| {
        smallest_integer_above(&pi_interval(p)?.scale(&scale))
    })
}

/// Least integer `l` with `l > 2π/(p+1)`: the level at which `p`-dimensional
/// subvarieties of ball quotients are of general type.
pub fn ball_level(p: u32, prec: Precision) -> Result<u64> {
    check_range("p", p as u64, 1, u32::MAX as u64 - 1)?;
    let l = integer_above_two_pi_over(p + 1, prec)?;
    Ok(l.to_u64().expect("2π/(p+1) < 7"))
}

/// Least integer `l` with `l > 1/(α·C_p)` where `α` is the Bakker–Tsimerman
/// bound for `B^n`, evaluated from the enclosure of `α`.
pub fn ball_level_from_alpha(n: u32, p: u32, prec: Precision) -> Result<u64> {
    let c = ball_c(n, p)?;
    let l = refine(certify_start(prec), |q| {
        let alpha = bakker_tsimerman_alpha(n, q)?;
        smallest_integer_above(&alpha.scale(&c).recip()?)
    })?;
    Ok(l.to_u64().expect("2π/(p+1) < 7"))
}

/// Smallest dimension `p = ⌈2π/l⌉ - 1` of subvarieties known to be of general
/// type at level `l`, clamped to at least 1.
///
/// `2π/l` is irrational, so its ceiling equals the least integer strictly
/// above it and is always certifiable.
pub fn ball_min_general_type_dim(l: u32, prec: Precision) -> Result<u32> {
    if l == 0 {
        return Err(Error::OutOfRange {
            name: "l",
            value: 0,
            min: 1,
            max: u32::MAX as u64,
        });
    }
    let ceiling = integer_above_two_pi_over(l, prec)?;
    let p = (ceiling - BigInt::one()).max(BigInt::one());
    Ok(p.to_u32().expect("at most 6"))
}
