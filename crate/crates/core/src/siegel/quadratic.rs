use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

use super::CoefficientVector;

/// Minimum of `2·sum m_i^2 + sum b_i m_i` over the ordered simplex
/// `{m_1 >= … >= m_g >= 0, sum m_i = 1}` for non-decreasing `b`.
///
/// Returns the value and the support length `t` (`m_{t+1} = … = m_g = 0` at
/// the optimum). `t` is found by shrinking from `g` while
/// `sum_{i<=t} (b_t - b_i) >= 4`; the value is then
/// `(4 + sum_{i<=t} b_i)^2 / (8t) - sum_{i<=t} b_i^2 / 8`.
pub fn min_quadratic_in<T: Scalar>(b: &CoefficientVector) -> Result<(T, usize)> {
    if b.is_empty() {
        return Err(Error::Precondition("empty coefficient vector".into()));
    }
    if !b.is_non_decreasing() {
        return Err(Error::NonMonotone(b.0.clone()));
    }
    let b = b.as_slice();
    let mut t = b.len();
    while t > 1 {
        let top = b[t - 1];
        let gap: u32 = b[..t].iter().map(|&bi| top - bi).sum();
        if gap < 4 {
            break;
        }
        t -= 1;
    }
    let s1: u32 = b[..t].iter().sum();
    let s2: u64 = b[..t].iter().map(|&bi| bi as u64 * bi as u64).sum();
    let shifted = T::of_u32(s1 + 4);
    let value = shifted.clone() * shifted / T::of_u32(8 * t as u32)
        - T::of_u32(u32::try_from(s2).expect("coefficients fit in u32")) / T::of_u32(8);
    Ok((value, t))
}

/// Exact instance of [`min_quadratic_in`].
pub fn min_quadratic(b: &CoefficientVector) -> Result<(Rational, usize)> {
    min_quadratic_in::<Rational>(b)
}
