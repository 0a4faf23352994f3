//! Independent checks of the Siegel computation.
//!
//! [`brute_force_d`] searches every admissible subset of the triangle with
//! an active-set QP that makes no sortedness assumption, so it shares no
//! shortcut with [`crate::siegel::siegel_d`]. [`numeric_d`] starts from the
//! curvature form itself and works in double precision; it validates
//! structure, not digits.

mod brute_force;
mod numeric;
mod simplex_qp;

use num_traits::ToPrimitive;
use serde::Serialize;

pub use brute_force::{brute_force_d, MAX_BRUTE_FORCE_GENUS};
pub use numeric::{direction_d, numeric_d, MAX_NUMERIC_GENUS};
pub use simplex_qp::{
    ordered_simplex_linear, ordered_simplex_qp, ordered_simplex_qp_in, ordered_simplex_qp_small,
};

use crate::error::{check_range, Result};
use crate::siegel::{dimension, siegel_d};
use crate::Real;

/// Slack for rounding in the lower-bound direction of the numeric check.
pub const NUMERIC_SLACK: Real = 1e-9;
/// Maximum allowed grid excess of the numeric check at 40 steps.
pub const NUMERIC_GRID_TOLERANCE: Real = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleMismatch {
    pub g: u32,
    pub p: u32,
    pub siegel: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub oracle: &'static str,
    pub g_max: u32,
    pub checked: usize,
    pub mismatches: Vec<OracleMismatch>,
}

/// Exact comparison of [`brute_force_d`] with `siegel_d` for all `p` and
/// `2 <= g <= g_max`.
pub fn verify_exact(g_max: u32) -> Result<OracleReport> {
    check_range("g_max", g_max as u64, 2, MAX_BRUTE_FORCE_GENUS as u64)?;
    let mut checked = 0;
    let mut mismatches = vec![];
    for g in 2..=g_max {
        for p in 1..=dimension(g) {
            let pruned = siegel_d(g, p)?.d;
            let full = brute_force_d(g, p)?;
            checked += 1;
            if pruned != full {
                mismatches.push(OracleMismatch {
                    g,
                    p,
                    siegel: pruned.to_string(),
                    oracle: full.to_string(),
                });
            }
        }
    }
    Ok(OracleReport {
        oracle: "exact",
        g_max,
        checked,
        mismatches,
    })
}

/// Checks `siegel_d <= numeric_d + slack` and
/// `numeric_d - siegel_d <= tolerance` for all `p` and `2 <= g <= g_max`.
pub fn verify_numeric(g_max: u32, grid_steps: u32, tolerance: Real) -> Result<OracleReport> {
    check_range("g_max", g_max as u64, 2, MAX_NUMERIC_GENUS as u64)?;
    let mut checked = 0;
    let mut mismatches = vec![];
    for g in 2..=g_max {
        for p in 1..=dimension(g) {
            let exact = siegel_d(g, p)?.d;
            let exact_f = exact.to_f64().unwrap_or(Real::NAN);
            let approx = numeric_d(g, p, grid_steps)?;
            checked += 1;
            if !(exact_f <= approx + NUMERIC_SLACK && approx - exact_f <= tolerance) {
                mismatches.push(OracleMismatch {
                    g,
                    p,
                    siegel: exact.to_string(),
                    oracle: format!("{approx:.12}"),
                });
            }
        }
    }
    Ok(OracleReport {
        oracle: "numeric",
        g_max,
        checked,
        mismatches,
    })
}
