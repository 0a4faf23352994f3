use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{pow2, Interval, Precision};
use crate::error::{Error, Result};
use crate::Rational;

/// Scaled enclosure `value · 2^w ∈ [center - err, center + err]`.
struct FixedPoint {
    center: BigInt,
    err: BigInt,
}

/// Fixed-point arctan(1/x) by its alternating series. Each quotient is an
/// exact floor (nested floor division by integers composes exactly), so the
/// accumulated error is below one unit per term plus one for the tail.
fn arctan_recip(x: u32, w: u32) -> FixedPoint {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = pow2(w) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    FixedPoint {
        center: sum,
        err: BigInt::from(k + 1),
    }
}

fn enclosure(fp: &FixedPoint, w: u32) -> Interval {
    let den = pow2(w);
    Interval::from_sorted(
        Rational::new(&fp.center - &fp.err, den.clone()),
        Rational::new(&fp.center + &fp.err, den),
    )
}

fn widen_until<F: Fn(u32) -> Interval>(prec: Precision, eval: F) -> Result<Interval> {
    let mut w = prec.guarded(16);
    loop {
        let iv = eval(w);
        if iv.width_within(prec.bits()) {
            return Ok(iv);
        }
        w += 16;
        if w > prec.max_bits() + 4096 {
            return Err(Error::PrecisionExhausted {
                needed: w as u64,
                max: prec.max_bits(),
            });
        }
    }
}

/// Enclosure of π of width at most `2^-bits`, from Machin's formula
/// `π = 16·atan(1/5) - 4·atan(1/239)`.
pub fn pi_interval(prec: Precision) -> Result<Interval> {
    widen_until(prec, |w| {
        let a = arctan_recip(5, w);
        let b = arctan_recip(239, w);
        let fp = FixedPoint {
            center: BigInt::from(16) * a.center - BigInt::from(4) * b.center,
            err: BigInt::from(16) * a.err + BigInt::from(4) * b.err,
        };
        enclosure(&fp, w)
    })
}

/// Enclosure of Euler's number from `sum 1/k!` with tail bound `1/(n·n!)`.
pub fn e_interval(prec: Precision) -> Result<Interval> {
    widen_until(prec, |w| {
        let mut term = pow2(w);
        let mut sum = term.clone();
        let mut n: u64 = 0;
        while term > BigInt::one() {
            n += 1;
            term /= BigInt::from(n);
            sum += &term;
        }
        // sum = sum_{k<=n} floor(2^w/k!): each floor loses < 1 unit, and the
        // tail after n is at most 2^w/(n·n!) <= floor(term/n) + 1 units.
        let n = n.max(1);
        let tail = &term / BigInt::from(n) + BigInt::one();
        let den = pow2(w);
        Interval::from_sorted(
            Rational::new(sum.clone(), den.clone()),
            Rational::new(sum + BigInt::from(n + 1) + tail, den),
        )
    })
}

fn exact_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

/// Enclosure of `x^(1/n)` for `x >= 0`, width at most `2^-bits`.
///
/// Exact rational roots come back as point intervals. Otherwise the
/// endpoints are `y/2^b` and `(y+1)/2^b` with `y = floor((x·2^(n·b))^(1/n))`.
pub fn nth_root_interval(x: &Rational, n: u32, prec: Precision) -> Result<Interval> {
    if n == 0 {
        return Err(Error::Precondition("root index must be positive".into()));
    }
    if x.is_negative() {
        return Err(Error::NegativeInput(x.to_string()));
    }
    if x.is_zero() || n == 1 {
        return Ok(Interval::point(x.clone()));
    }
    if let (Some(a), Some(b)) = (exact_root(x.numer(), n), exact_root(x.denom(), n)) {
        return Ok(Interval::point(Rational::new(a, b)));
    }
    let b = prec.bits();
    let scaled = (x.numer() * pow2(n * b)) / x.denom();
    let y = scaled.nth_root(n);
    let den = pow2(b);
    Ok(Interval::from_sorted(
        Rational::new(y.clone(), den.clone()),
        Rational::new(y + BigInt::one(), den),
    ))
}

/// Enclosure of `t^(1/n)` for every `t` in a non-negative interval.
pub fn nth_root_of_interval(x: &Interval, n: u32, prec: Precision) -> Result<Interval> {
    let lo = nth_root_interval(x.lo(), n, prec)?;
    let hi = nth_root_interval(x.hi(), n, prec)?;
    Ok(Interval::from_sorted(lo.lo().clone(), hi.hi().clone()))
}

/// A value accepted by [`smallest_integer_above`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounded<'a> {
    Exact(&'a Rational),
    Enclosed(&'a Interval),
}

impl<'a> From<&'a Rational> for Bounded<'a> {
    fn from(x: &'a Rational) -> Self {
        Bounded::Exact(x)
    }
}

impl<'a> From<&'a Interval> for Bounded<'a> {
    fn from(x: &'a Interval) -> Self {
        Bounded::Enclosed(x)
    }
}

/// Least integer strictly greater than the value.
///
/// For an enclosure this succeeds only when every member has the same
/// answer; otherwise it returns [`Error::Uncertifiable`] so the caller can
/// refine. When the enclosed quantity is known to be irrational, the result
/// is also its ceiling.
pub fn smallest_integer_above<'a>(x: impl Into<Bounded<'a>>) -> Result<BigInt> {
    match x.into() {
        Bounded::Exact(q) => Ok(q.floor().to_integer() + BigInt::one()),
        Bounded::Enclosed(iv) => {
            let above = iv.lo().floor().to_integer() + BigInt::one();
            if iv.hi() < &Rational::from_integer(above.clone()) {
                Ok(above)
            } else {
                Err(Error::Uncertifiable(iv.to_string()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn dec(s: &str) -> Rational {
        crate::exactmath::parse_rational(s).unwrap()
    }

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn pi_contains_known_digits() {
        let p32 = pi_interval(prec(32)).unwrap();
        assert!(p32.width_within(32));
        assert!(p32.lo() < &dec("3.1415926536") && p32.hi() > &dec("3.1415926535"));
        let p8 = pi_interval(prec(8)).unwrap();
        assert!(p8.width_within(8));
        assert!(p8.lo() < &dec("3.1416") && p8.hi() > &dec("3.1415"));
        let p1000 = pi_interval(prec(1000)).unwrap();
        assert!(p1000.width_within(1000));
        // 50 digits
        let digits = dec("3.14159265358979323846264338327950288419716939937510");
        assert!((p1000.midpoint() - digits).abs() < dec("1e-49"));
    }

    #[test]
    fn e_contains_known_digits() {
        let e32 = e_interval(prec(32)).unwrap();
        assert!(e32.width_within(32));
        assert!(e32.lo() < &dec("2.7182818285") && e32.hi() > &dec("2.7182818284"));
        let e8 = e_interval(prec(8)).unwrap();
        assert!(e8.contains(&dec("2.718281828")));
        let e500 = e_interval(prec(500)).unwrap();
        let digits = dec("2.71828182845904523536028747135266249775724709369995");
        assert!((e500.midpoint() - digits).abs() < dec("1e-49"));
    }

    #[test]
    fn refinements_nest() {
        let coarse = pi_interval(prec(16)).unwrap();
        let fine = pi_interval(prec(64)).unwrap();
        assert!(fine.intersects(&coarse));
        let coarse = e_interval(prec(16)).unwrap();
        let fine = e_interval(prec(64)).unwrap();
        assert!(fine.intersects(&coarse));
    }

    #[test]
    fn root_of_one_360th() {
        let r = nth_root_interval(&q(1, 360), 2, prec(32)).unwrap();
        assert!(r.width_within(32));
        assert!(r.contains(&r.midpoint()));
        assert!(r.lo().clone() * r.lo() <= q(1, 360));
        assert!(r.hi().clone() * r.hi() >= q(1, 360));
        assert!(!r.contains_zero() && r.lo() > &dec("0.0527046") && r.hi() < &dec("0.0527047"));
    }

    #[test]
    fn exact_roots_are_points() {
        assert_eq!(
            nth_root_interval(&q(1, 1), 5, prec(8)).unwrap(),
            Interval::point(q(1, 1))
        );
        assert_eq!(
            nth_root_interval(&q(0, 1), 3, prec(8)).unwrap(),
            Interval::point(q(0, 1))
        );
        assert_eq!(
            nth_root_interval(&q(8, 27), 3, prec(64)).unwrap(),
            Interval::point(q(2, 3))
        );
    }

    #[test]
    fn negative_root_input_fails() {
        assert!(matches!(
            nth_root_interval(&q(-1, 2), 2, prec(16)),
            Err(Error::NegativeInput(_))
        ));
    }

    #[test]
    fn strict_integer_boundaries() {
        assert_eq!(smallest_integer_above(&q(3, 1)).unwrap(), BigInt::from(4));
        assert_eq!(smallest_integer_above(&q(-1, 2)).unwrap(), BigInt::from(0));
        let iv = Interval::new(dec("3.1"), dec("3.2")).unwrap();
        assert_eq!(smallest_integer_above(&iv).unwrap(), BigInt::from(4));
        let iv = Interval::new(dec("2.99"), dec("3.01")).unwrap();
        assert!(matches!(
            smallest_integer_above(&iv),
            Err(Error::Uncertifiable(_))
        ));
        let iv = Interval::new(dec("2.9"), dec("3")).unwrap();
        assert!(smallest_integer_above(&iv).is_err());
        let iv = Interval::new(dec("3"), dec("3.5")).unwrap();
        assert_eq!(smallest_integer_above(&iv).unwrap(), BigInt::from(4));
    }
}
