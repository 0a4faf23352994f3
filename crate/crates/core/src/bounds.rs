//! Published lower bounds for the effectivity coefficients `α_eff` and
//! `α_base`, and the isotropy criteria for singular quotients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::exactmath::{
    bernoulli, binomial, factorial, integer, nth_root_interval, nth_root_of_interval, pi_interval,
    pow2, rational, to_width, Interval, Precision, Value,
};
use crate::Rational;

/// Largest number of series terms [`zeta_even`] will sum.
pub const ZETA_MAX_TERMS: u64 = 1 << 20;

const ZETA_START_TERMS: u64 = 200;

/// Weissauer's `α_base >= (g+1)/12` for `A_g`.
pub fn weissauer_alpha_base(g: u32) -> Result<Rational> {
    check_range("g", g as u64, 2, u32::MAX as u64)?;
    Ok(rational(g as i64 + 1, 12))
}

/// Hulek–Tai's `α_base >= 1/(C(n+1, 2) + 2)` for any `n`-dimensional
/// quotient.
pub fn ht06_alpha_base(n: u32) -> Result<Rational> {
    check_range("n", n as u64, 1, u32::MAX as u64)?;
    let d = binomial(n as u64 + 1, 2) + BigInt::from(2);
    Ok(Rational::new(BigInt::from(1), d))
}

/// `g!·|B_2g|/(2g)!`, the rational under the `g`-th root of Grushevsky's
/// bound once `ζ(2g)` is written with Bernoulli numbers.
fn grushevsky_radicand(g: u32) -> Rational {
    let b = bernoulli(2 * g as usize).abs();
    b * Rational::new(factorial(g as u64), factorial(2 * g as u64))
}

/// Grushevsky's `α_eff >= (g+1)(2·g!·ζ(2g))^(1/g)/(2π)^2`, evaluated as
/// `(g+1)·(g!·|B_2g|/(2g)!)^(1/g)` with no transcendental constant left.
pub fn grushevsky_alpha_eff(g: u32, prec: Precision) -> Result<Interval> {
    check_range("g", g as u64, 2, u32::MAX as u64)?;
    let x = grushevsky_radicand(g);
    let scale = integer(g as i64 + 1);
    to_width(prec, |inner| {
        Ok(nth_root_interval(&x, g, inner)?.scale(&scale))
    })
}

/// Grushevsky's bound evaluated literally, from [`zeta_even`] and π.
pub fn grushevsky_alpha_eff_direct(g: u32, prec: Precision) -> Result<Interval> {
    check_range("g", g as u64, 2, u32::MAX as u64)?;
    let k = Rational::from_integer(BigInt::from(2) * factorial(g as u64));
    to_width(prec, |inner| {
        let zeta = zeta_even(g, inner)?;
        let root = nth_root_of_interval(&zeta.scale(&k), g, inner)?;
        let two_pi = pi_interval(inner)?.scale(&integer(2));
        let denominator = two_pi.powi(2);
        Ok(root
            .checked_div(&denominator)?
            .scale(&integer(g as i64 + 1)))
    })
}

/// `sum_{k<=n} floor(2^w / k^s)` and the enclosure of the partial sum it
/// gives: each floor loses less than one unit.
fn partial_sum(s: u32, n: u64, w: u32) -> (BigInt, BigInt) {
    let one = pow2(w);
    let mut sum = BigInt::zero();
    for k in 1..=n {
        sum += &one / num_traits::pow(BigInt::from(k), s as usize);
    }
    let hi = &sum + BigInt::from(n);
    (sum, hi)
}

/// Enclosure of `sum_{k>n} k^-s` for `s >= 2`. The terms are convex in `k`,
/// so the trapezoid rule over-estimates and the midpoint rule
/// under-estimates the integral of `x^-s`.
fn zeta_tail(s: u32, n: u64) -> Interval {
    let s1 = s as i64 - 1;
    let nq = Rational::from_integer(BigInt::from(n));
    let n_pow = |e: i64| -> Rational { num_traits::pow(nq.clone(), e as usize).recip() };
    let lo = n_pow(s1) / integer(s1) - n_pow(s as i64) / integer(2);
    let mid = nq + rational(1, 2);
    let hi = num_traits::pow(mid, s1 as usize).recip() / integer(s1);
    Interval::new(lo, hi).expect("convexity bracket is ordered")
}

/// Enclosure of `ζ(2g)` of width at most `2^-bits`, from partial sums and a
/// two-sided tail bracket. Fails with [`Error::PrecisionExhausted`] past
/// [`ZETA_MAX_TERMS`] terms.
pub fn zeta_even(g: u32, prec: Precision) -> Result<Interval> {
    check_range("g", g as u64, 1, u32::MAX as u64 / 2)?;
    let s = 2 * g;
    let bits = prec.bits();
    let mut n = ZETA_START_TERMS;
    loop {
        let w = bits + 66 - n.leading_zeros();
        let (lo, hi) = partial_sum(s, n, w);
        let den = pow2(w);
        let head = Interval::new(Rational::new(lo, den.clone()), Rational::new(hi, den))?;
        let iv = &head + &zeta_tail(s, n);
        if iv.width_within(bits) {
            return Ok(iv);
        }
        n *= 2;
        if n > ZETA_MAX_TERMS {
            return Err(Error::PrecisionExhausted {
                needed: bits as u64,
                max: prec.max_bits(),
            });
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    WeissauerBase,
    GrushevskyEff,
    Ht06Base,
    BakkerTsimerman,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [
        BoundKind::WeissauerBase,
        BoundKind::GrushevskyEff,
        BoundKind::Ht06Base,
        BoundKind::BakkerTsimerman,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::WeissauerBase => "weissauer-base",
            BoundKind::GrushevskyEff => "grushevsky-eff",
            BoundKind::Ht06Base => "ht06-base",
            BoundKind::BakkerTsimerman => "bakker-tsimerman",
        }
    }

    /// What the bound is for and what its parameter means.
    pub fn applicability(&self) -> &'static str {
        match self {
            BoundKind::WeissauerBase => {
                "alpha_base of toroidal compactifications of A_g; parameter g >= 2"
            }
            BoundKind::GrushevskyEff => {
                "alpha_eff of toroidal compactifications of A_g; parameter g >= 2"
            }
            BoundKind::Ht06Base => {
                "alpha_base of any smooth toroidal quotient; parameter n = dimension"
            }
            BoundKind::BakkerTsimerman => "alpha_base of ball quotients B^n/Γ; parameter n >= 1",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bound `{s}`")))
    }
}

/// A lower bound for `α_eff` or `α_base`, evaluated for one parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaBound {
    pub kind: BoundKind,
    pub param: u32,
    #[serde(serialize_with = "crate::serde_text::value")]
    pub value: Value,
    pub applicability: &'static str,
}

impl AlphaBound {
    /// Evaluates `kind` at `param`; enclosures are `2^-bits` wide.
    pub fn evaluate(kind: BoundKind, param: u32, prec: Precision) -> Result<Self> {
        let value = match kind {
            BoundKind::WeissauerBase => Value::Exact(weissauer_alpha_base(param)?),
            BoundKind::Ht06Base => Value::Exact(ht06_alpha_base(param)?),
            BoundKind::GrushevskyEff => Value::Enclosed(grushevsky_alpha_eff(param, prec)?),
            BoundKind::BakkerTsimerman => {
                Value::Enclosed(crate::ball::bakker_tsimerman_alpha(param, prec)?)
            }
        };
        debug_assert!(value.is_positive());
        Ok(Self {
            kind,
            param,
            value,
            applicability: kind.applicability(),
        })
    }
}

/// Rotation exponents `a_1..a_n` and order `r` of a cyclic isotropy action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyData {
    a: Vec<u32>,
    r: u32,
    #[serde(skip)]
    sorted: Vec<u32>,
}

impl IsotropyData {
    pub fn new(a: Vec<u32>, r: u32) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Precondition("no rotation exponents".into()));
        }
        if let Some(bad) = a.iter().find(|&&x| x == 0) {
            return Err(Error::Precondition(format!(
                "rotation exponent {bad} is not positive"
            )));
        }
        if r == 0 {
            return Err(Error::Precondition("order must be positive".into()));
        }
        let mut sorted = a.clone();
        sorted.sort_unstable();
        Ok(Self { a, r, sorted })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Sum of the `d` smallest exponents.
    fn smallest_sum(&self, d: u32) -> Result<u64> {
        check_range("d", d as u64, 1, self.a.len() as u64)?;
        Ok(self.sorted[..d as usize].iter().map(|&x| x as u64).sum())
    }
}

/// Condition `(I_{x,d})`: every choice of `d` exponents sums to at least `r`,
/// i.e. the `d` smallest do.
#[allow(non_snake_case)]
pub fn check_condition_I(data: &IsotropyData, d: u32) -> Result<bool> {
    Ok(data.smallest_sum(d)? >= data.r as u64)
}

/// Smallest `β` with `s/r >= 1 - β` for the `p` smallest exponents summing to
/// `s`: `max(0, 1 - s/r)`.
pub fn beta_level(data: &IsotropyData, p: u32) -> Result<Rational> {
    let s = data.smallest_sum(p)?;
    Ok(clamped_defect(s, data.r as u64))
}

/// `max(0, 1 - p/|G|)`, which bounds [`beta_level`] for every isotropy datum
/// with `r <= |G|`.
pub fn beta_upper_bound(p: u32, group_order: u32) -> Result<Rational> {
    check_range("group_order", group_order as u64, 1, u32::MAX as u64)?;
    Ok(clamped_defect(p as u64, group_order as u64))
}

fn clamped_defect(s: u64, r: u64) -> Rational {
    if s >= r {
        Rational::zero()
    } else {
        Rational::new(BigInt::from(r - s), BigInt::from(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_rational;

    fn dec(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn exact_bounds() {
        assert_eq!(weissauer_alpha_base(11).unwrap(), integer(1));
        assert_eq!(weissauer_alpha_base(2).unwrap(), rational(1, 4));
        assert_eq!(weissauer_alpha_base(23).unwrap(), integer(2));
        assert!(weissauer_alpha_base(1).is_err());
        assert_eq!(ht06_alpha_base(3).unwrap(), rational(1, 8));
        assert_eq!(ht06_alpha_base(6).unwrap(), rational(1, 23));
        assert_eq!(ht06_alpha_base(1).unwrap(), rational(1, 3));
    }

    #[test]
    fn grushevsky_values() {
        let prec = Precision::new(48).unwrap();
        assert_eq!(grushevsky_radicand(2), rational(1, 360));
        assert_eq!(grushevsky_radicand(3), rational(1, 5040));
        let a2 = grushevsky_alpha_eff(2, prec).unwrap();
        assert!(a2.width_within(48));
        // 1/(2·sqrt(10))
        assert!(a2.contains(&dec("0.15811388300841897")));
        let a3 = grushevsky_alpha_eff(3, prec).unwrap();
        // 4·5040^(-1/3)
        assert!(a3.contains(&dec("0.233300934925067")));
    }

    #[test]
    fn zeta_values() {
        let prec = Precision::new(24).unwrap();
        let z2 = zeta_even(1, prec).unwrap();
        assert!(z2.width_within(24));
        let pi = pi_interval(Precision::new(64).unwrap()).unwrap();
        assert!(z2.intersects(&pi.powi(2).scale(&rational(1, 6))));
        let z4 = zeta_even(2, Precision::new(40).unwrap()).unwrap();
        assert!(z4.intersects(&pi.powi(4).scale(&rational(1, 90))));
        for g in 1..8 {
            assert!(zeta_even(g, prec).unwrap().gt(&integer(1)));
        }
    }

    #[test]
    fn zeta_gives_up_past_term_cap() {
        let prec = Precision::new(200).unwrap();
        assert!(matches!(
            zeta_even(1, prec),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn tail_bracket_contains_exact_tail() {
        // sum_{k>2} k^-4 = π^4/90 - 1 - 1/16
        let tail = zeta_tail(4, 2);
        let pi = pi_interval(Precision::new(64).unwrap()).unwrap();
        let exact = &pi.powi(4).scale(&rational(1, 90)) - &Interval::point(rational(17, 16));
        assert!(exact.is_subset_of(&tail));
    }

    #[test]
    fn dual_path_overlaps() {
        let prec = Precision::new(40).unwrap();
        for g in 2..=5 {
            let a = grushevsky_alpha_eff(g, prec).unwrap();
            let b = grushevsky_alpha_eff_direct(g, prec).unwrap();
            assert!(a.intersects(&b), "g={g}: {a} vs {b}");
        }
    }

    #[test]
    fn registry() {
        let prec = Precision::new(32).unwrap();
        for kind in BoundKind::ALL {
            let b = AlphaBound::evaluate(kind, 3, prec).unwrap();
            assert!(b.value.is_positive());
            assert_eq!(kind.name().parse::<BoundKind>().unwrap(), kind);
        }
        assert!("nope".parse::<BoundKind>().is_err());
    }

    #[test]
    fn isotropy_examples() {
        let data = IsotropyData::new(vec![1, 1, 2], 3).unwrap();
        assert!(!check_condition_I(&data, 2).unwrap());
        assert!(check_condition_I(&data, 3).unwrap());
        assert!(check_condition_I(&IsotropyData::new(vec![2, 2], 4).unwrap(), 2).unwrap());
        assert_eq!(beta_level(&data, 2).unwrap(), rational(1, 3));
        assert_eq!(beta_level(&data, 3).unwrap(), integer(0));
        assert!(beta_level(&data, 4).is_err());
        assert!(check_condition_I(&data, 0).is_err());
        let ones = IsotropyData::new(vec![1; 5], 5).unwrap();
        assert_eq!(beta_level(&ones, 5).unwrap(), integer(0));
        assert!(IsotropyData::new(vec![1, 0], 3).is_err());
        assert!(IsotropyData::new(vec![1], 0).is_err());
    }

    #[test]
    fn beta_bound_examples() {
        assert_eq!(beta_upper_bound(4, 6).unwrap(), rational(1, 3));
        assert_eq!(beta_upper_bound(7, 6).unwrap(), integer(0));
        assert_eq!(beta_upper_bound(1, 1).unwrap(), integer(0));
    }
}
