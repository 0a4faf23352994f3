use std::collections::HashMap;

use crate::error::{check_range, Result};
use crate::exactmath::integer;
use crate::siegel::dimension;
use crate::Rational;

use super::simplex_qp::{ordered_simplex_linear, ordered_simplex_qp_small};

/// Largest genus the unpruned search accepts.
pub const MAX_BRUTE_FORCE_GENUS: u32 = 6;

/// Cells of the upper triangle, row-major, as 0-based `(i, j)` with `i <= j`.
fn triangle(g: u32) -> Vec<(usize, usize)> {
    let g = g as usize;
    (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect()
}

/// Next mask with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

fn pack(first_branch: bool, coeffs: &[u32]) -> u64 {
    coeffs
        .iter()
        .fold(first_branch as u64, |acc, &c| (acc << 5) | c as u64)
}

/// `D_p` by minimizing over every subset of the triangle with `p - 1`
/// elements and at most `g - 1` diagonal elements, without any packing
/// assumption.
///
/// With exactly `g - 1` diagonal elements the value is `2` plus the minimum
/// of the off-diagonal linear part; otherwise it is the ordered-simplex QP
/// with diagonal elements counted twice. Identical coefficient vectors are
/// solved once.
pub fn brute_force_d(g: u32, p: u32) -> Result<Rational> {
    check_range("g", g as u64, 2, MAX_BRUTE_FORCE_GENUS as u64)?;
    check_range("p", p as u64, 1, dimension(g) as u64)?;
    let cells = triangle(g);
    let size = p - 1;
    let mut memo: HashMap<u64, Rational> = HashMap::new();
    let mut best: Option<Rational> = None;
    let limit = 1u64 << cells.len();
    let mut mask = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut coeffs = vec![0u32; g as usize];
    loop {
        coeffs.iter_mut().for_each(|c| *c = 0);
        let mut diagonal = 0;
        for (bit, &(i, j)) in cells.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                if i == j {
                    diagonal += 1;
                }
                coeffs[i] += 1;
                coeffs[j] += 1;
            }
        }
        if diagonal < g {
            let first_branch = diagonal == g - 1;
            if first_branch {
                // the first branch only sees off-diagonal elements
                for (bit, &(i, j)) in cells.iter().enumerate() {
                    if i == j && mask & (1 << bit) != 0 {
                        coeffs[i] -= 2;
                    }
                }
            }
            let value = memo.entry(pack(first_branch, &coeffs)).or_insert_with(|| {
                if first_branch {
                    integer(2) + ordered_simplex_linear(&coeffs)
                } else {
                    ordered_simplex_qp_small(&coeffs)
                }
            });
            if best.as_ref().is_none_or(|b| *value < *b) {
                best = Some(value.clone());
            }
        }
        if mask == 0 {
            break;
        }
        mask = next_same_popcount(mask);
        if mask >= limit {
            break;
        }
    }
    Ok(best.expect("the empty or any admissible subset exists"))
}
