use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::binomial;
use crate::Rational;

static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Computed from `sum_{k=0}^{n} C(n+1, k) B_k = 0` and cached; the cache is
/// shared across threads.
pub fn bernoulli(n: usize) -> Rational {
    let cache = CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]));
    if let Some(b) = cache.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = cache.write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len();
        let value = if m > 1 && m % 2 == 1 {
            Rational::zero()
        } else {
            let acc = table
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (k, b)| {
                    acc + Rational::from_integer(binomial(m as u64 + 1, k as u64)) * b
                });
            -acc / Rational::from_integer(BigInt::from(m + 1))
        };
        table.push(value);
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(6), q(1, 42));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn defining_recurrence_holds() {
        for n in 1..40u64 {
            let s = (0..=n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(binomial(n + 1, k)) * bernoulli(k as usize)
            });
            assert!(s.is_zero(), "recurrence fails at n = {n}");
        }
    }

    #[test]
    fn concurrent_readers_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || bernoulli(30 + 2 * i)))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), bernoulli(30 + 2 * i));
        }
    }
}
