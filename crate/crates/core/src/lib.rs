//! Exact curvature constants of bounded symmetric domains and the certified
//! integer thresholds derived from them.
//!
//! * [`exactmath`]: rationals, Bernoulli numbers, interval enclosures of π,
//!   e and n-th roots.
//! * [`siegel`]: the constants `D_p`, `C_p` of the Siegel half-space by
//!   combinatorial minimization, and their closed-form table.
//! * [`ball`]: constants and thresholds for the unit ball.
//! * [`bounds`]: lower bounds for the effectivity coefficients and the
//!   isotropy criteria on singular quotients.
//! * [`thresholds`]: certified level, dimension and codimension thresholds.
//! * [`oracle`]: brute-force checks of the Siegel computation.
//! * [`cli`]: the `hypconst` command-line front end.

pub mod ball;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod oracle;
pub mod scalar;
pub(crate) mod serde_text;
pub mod siegel;
pub mod thresholds;

pub use error::{Error, Result};
pub use exactmath::{Interval, Precision, Value};
pub use scalar::Scalar;

/// Arbitrary-precision exact fraction, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Floating-point scalar used by the numerical oracle.
pub type Real = f64;
