//! Scalar abstraction for the field-valued parts of the computation.
//!
//! The quadratic minimizations over the ordered simplex only need field
//! operations and an order, so they are written once against [`Scalar`] and
//! instantiated with exact rationals for certified results or with floats
//! for quick exploration.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

use crate::Rational;

/// An ordered field usable by the simplex minimizers.
///
/// Only [`Rational`] gives exact results; `f32`/`f64` instances are
/// approximations and never enter the certified pipeline.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug {
    fn of_u32(v: u32) -> Self {
        <Self as FromPrimitive>::from_u32(v).expect("u32 is representable")
    }

    fn of_ratio(num: u32, den: u32) -> Self {
        Self::of_u32(num) / Self::of_u32(den)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Rational {}
/// Exact small-denominator rationals for the oracle's inner loops; the
/// ordered-simplex problems there stay far below the `i128` range.
impl Scalar for num_rational::Ratio<i128> {}
