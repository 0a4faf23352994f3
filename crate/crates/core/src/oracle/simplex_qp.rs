use num_rational::Ratio;

use crate::scalar::Scalar;
use crate::Rational;

/// Exact minimum of `2·sum m_i^2 + sum b_i m_i` over the ordered simplex,
/// for coefficients in any order.
///
/// Every face of the ordered simplex is a partition of `1..=t` into
/// consecutive blocks of equal coordinates followed by a zero tail
/// `m_{t+1..g} = 0`. On a face the problem is a strictly convex equality
/// QP: with `λ = (4 + sum_{i<=t} b_i) / t`, block `B` takes the value
/// `(λ - mean_{i in B} b_i) / 4`. The face minimum is feasible when those
/// values are non-increasing and non-negative; the overall minimum is the
/// smallest feasible face minimum.
pub fn ordered_simplex_qp_in<T: Scalar>(b: &[u32]) -> T {
    assert!(!b.is_empty(), "coefficient vector must be non-empty");
    let g = b.len();
    let two = T::of_u32(2);
    let four = T::of_u32(4);
    let mut best: Option<T> = None;
    for t in 1..=g {
        let total: u32 = b[..t].iter().sum();
        let lambda = T::of_ratio(total + 4, t as u32);
        // bit i set: a block boundary after index i (0-based, i < t-1)
        for cuts in 0u64..(1u64 << (t - 1)) {
            let mut previous: Option<T> = None;
            let mut feasible = true;
            let mut objective = T::zero();
            let mut start = 0;
            for end in 1..=t {
                if end < t && cuts & (1 << (end - 1)) == 0 {
                    continue;
                }
                let len = (end - start) as u32;
                let sum: u32 = b[start..end].iter().sum();
                let v = (lambda.clone() - T::of_ratio(sum, len)) / four.clone();
                if v < T::zero() || previous.as_ref().is_some_and(|p| v > *p) {
                    feasible = false;
                    break;
                }
                let len_t = T::of_u32(len);
                objective = objective
                    + two.clone() * len_t * v.clone() * v.clone()
                    + T::of_u32(sum) * v.clone();
                previous = Some(v);
                start = end;
            }
            if feasible && best.as_ref().is_none_or(|b| objective < *b) {
                best = Some(objective);
            }
        }
    }
    best.expect("the uniform point on the first coordinate is always feasible")
}

/// Exact instance of [`ordered_simplex_qp_in`].
pub fn ordered_simplex_qp(b: &[u32]) -> Rational {
    ordered_simplex_qp_in::<Rational>(b)
}

/// [`ordered_simplex_qp`] evaluated in `i128` fractions. All intermediate
/// denominators divide `(4·g·lcm(1..=g))^2`, so this is exact for the
/// coefficient sizes of the brute-force search.
pub fn ordered_simplex_qp_small(b: &[u32]) -> Rational {
    let v: Ratio<i128> = ordered_simplex_qp_in(b);
    Rational::new((*v.numer()).into(), (*v.denom()).into())
}

/// Exact minimum of `sum c_i m_i` over the ordered simplex: the minimum over
/// its vertices `(1/j, …, 1/j, 0, …, 0)`.
pub fn ordered_simplex_linear(c: &[u32]) -> Rational {
    let mut best: Option<Rational> = None;
    let mut partial = 0u32;
    for (j, &ci) in c.iter().enumerate() {
        partial += ci;
        let v = Rational::new(partial.into(), (j as u32 + 1).into());
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.expect("non-empty coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational;

    #[test]
    fn spot_values() {
        assert_eq!(ordered_simplex_qp(&[1, 1]), rational(2, 1));
        assert_eq!(ordered_simplex_qp(&[1, 0, 1]), rational(21, 16));
        for g in 1..7 {
            assert_eq!(ordered_simplex_qp(&vec![0; g]), rational(2, g as i64));
        }
        assert_eq!(ordered_simplex_qp(&[0, 0, 0, 4]), rational(2, 3));
    }

    #[test]
    fn float_instance_tracks_exact() {
        let exact = ordered_simplex_qp(&[3, 0, 2, 7]);
        let approx: f64 = ordered_simplex_qp_in(&[3, 0, 2, 7]);
        use num_traits::ToPrimitive;
        assert!((exact.to_f64().unwrap() - approx).abs() < 1e-12);
    }

    #[test]
    fn small_instance_matches_big() {
        for b in [[0u32, 3, 1, 7, 2], [5, 5, 5, 5, 5], [0, 0, 0, 0, 12]] {
            assert_eq!(ordered_simplex_qp_small(&b), ordered_simplex_qp(&b));
        }
    }

    #[test]
    fn linear_minimum_on_vertices() {
        assert_eq!(ordered_simplex_linear(&[0, 1, 1]), rational(0, 1));
        assert_eq!(ordered_simplex_linear(&[3, 1, 1]), rational(5, 3));
        assert_eq!(ordered_simplex_linear(&[2, 2]), rational(2, 1));
    }
}
