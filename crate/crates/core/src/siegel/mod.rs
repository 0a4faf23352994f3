//! Curvature constants `D_p` and `C_p = D_p / (g+1)` of the Siegel
//! half-space `H_g`.
//!
//! `D_p` is the minimum, over packed subsets Γ of the upper triangle with
//! `p - 1` elements and over the ordered simplex, of
//!
//! * `2 + sum_{(i,j) in Γ, i<j} (m_i + m_j)` when Γ has `g - 1` diagonal
//!   elements,
//! * `2·sum m_i^2 + sum_{(i,j) in Γ} (m_i + m_j)` otherwise.
//!
//! [`siegel_d`] evaluates this through [`enumerate_shapes`] and
//! [`min_quadratic`]; [`table_c`] reads the closed-form table indexed by the
//! triangular decomposition `p - 1 = k(k+1)/2 + r`.

mod quadratic;
mod shapes;

use num_integer::Roots;
use rayon::prelude::*;
use serde::Serialize;

pub use quadratic::{min_quadratic, min_quadratic_in};
pub use shapes::{dimension, enumerate_shapes, lin_part, CoefficientVector, GammaShape};

use crate::error::{check_range, Result};
use crate::exactmath::{integer, rational};
use crate::Rational;

/// `D_p`, `C_p`, and a minimizing shape for `(g, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiegelConstant {
    pub g: u32,
    pub p: u32,
    #[serde(rename = "D", serialize_with = "crate::serde_text::rational")]
    pub d: Rational,
    #[serde(rename = "C", serialize_with = "crate::serde_text::rational")]
    pub c: Rational,
    #[serde(skip)]
    pub witness: GammaShape,
}

/// Holomorphic sectional curvature bound `γ = 2 / (g(g+1))`.
pub fn gamma(g: u32) -> Rational {
    rational(2, (g * (g + 1)) as i64)
}

fn shape_value(g: u32, shape: &GammaShape) -> Result<Rational> {
    if shape.k == g - 1 {
        // The off-diagonal coefficients are non-decreasing, so the linear
        // part is minimized at the vertex m = (1, 0, …, 0) with value a_1.
        Ok(integer(2 + shape.rows[0] as i64))
    } else {
        Ok(min_quadratic(&lin_part(g, shape))?.0)
    }
}

/// `D_p` by minimizing over all packed shapes. Ties between minimizing
/// shapes are broken towards the lexicographically smallest `(k, rows)`.
pub fn siegel_d(g: u32, p: u32) -> Result<SiegelConstant> {
    let shapes = enumerate_shapes(g, p)?;
    let values: Vec<(Rational, &GammaShape)> = shapes
        .par_iter()
        .map(|s| shape_value(g, s).map(|v| (v, s)))
        .collect::<Result<_>>()?;
    let (d, witness) = values
        .into_iter()
        .min()
        .expect("every level has at least one shape");
    let c = &d / integer(g as i64 + 1);
    Ok(SiegelConstant {
        g,
        p,
        d,
        c,
        witness: witness.clone(),
    })
}

/// Shorthand for `siegel_d(g, p)?.c`.
pub fn siegel_c(g: u32, p: u32) -> Result<Rational> {
    Ok(siegel_d(g, p)?.c)
}

/// Triangular decomposition: the largest `k` with `k(k+1)/2 <= p - 1`, and
/// the remainder `r`.
pub fn triangular_split(p: u32) -> (u32, u32) {
    let m = (p - 1) as u64;
    let k = (((8 * m + 1).sqrt() - 1) / 2) as u32;
    let r = (m - (k as u64 * (k as u64 + 1)) / 2) as u32;
    debug_assert!(k as u64 * (k as u64 + 1) / 2 <= m);
    debug_assert!((k as u64 + 1) * (k as u64 + 2) / 2 > m);
    (k, r)
}

/// `(g+1)·C_p` from the closed-form table, by the column `g - k` and row `r`.
pub fn table_scaled(g: u32, k: u32, r: u32) -> Rational {
    let width = g - k;
    match (width, r) {
        (1, _) => integer(r as i64 + 2),
        (_, 0) => rational(2, width as i64),
        (2, 1) => rational(23, 16),
        (2, 2) => rational(7, 4),
        (2, 3) => rational(31, 16),
        (3, 1) => rational(11, 12),
        (4, 1) => rational(21, 32),
        _ => rational(2, width as i64 - 1),
    }
}

/// `C_p` from the closed-form table.
pub fn table_c(g: u32, p: u32) -> Result<Rational> {
    check_range("g", g as u64, 2, u32::MAX as u64)?;
    check_range("p", p as u64, 1, dimension(g) as u64)?;
    let (k, r) = triangular_split(p);
    Ok(table_scaled(g, k, r) / integer(g as i64 + 1))
}

/// One disagreement between the enumeration and the closed-form table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub g: u32,
    pub p: u32,
    #[serde(serialize_with = "crate::serde_text::rational")]
    pub computed: Rational,
    #[serde(serialize_with = "crate::serde_text::rational")]
    pub table: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub g_max: u32,
    pub checked: usize,
    pub mismatches: Vec<TableMismatch>,
}

/// Compares [`siegel_d`] with [`table_c`] for every `2 <= g <= g_max` and
/// every `p`. Disagreements are data, not errors.
pub fn verify_table(g_max: u32) -> Result<TableReport> {
    check_range("g_max", g_max as u64, 2, u32::MAX as u64)?;
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for g in 2..=g_max {
        for p in 1..=dimension(g) {
            let computed = siegel_d(g, p)?.c;
            let table = table_c(g, p)?;
            checked += 1;
            if computed != table {
                mismatches.push(TableMismatch {
                    g,
                    p,
                    computed,
                    table,
                });
            }
        }
    }
    Ok(TableReport {
        g_max,
        checked,
        mismatches,
    })
}

/// If `shape` is a full lower triangle on the last `k` indices plus a
/// partial right-packed row `g - k`, returns that row's length `r`.
///
/// Such minimizers must satisfy `r·(g - k - 1) <= 3`.
pub fn partial_row_length(g: u32, shape: &GammaShape) -> Option<u32> {
    let k = shape.k;
    if k == 0 || k > g - 1 {
        return None;
    }
    let partial = (g - k) as usize;
    let rows = &shape.rows;
    let below_full = (partial + 1..g as usize).all(|j| rows[j - 1] == g - j as u32);
    let above_empty = (1..partial).all(|j| rows[j - 1] == 0);
    let r = rows[partial - 1];
    (below_full && above_empty && r > 0 && r < k).then_some(r)
}
