use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{check_range, Result};
use crate::siegel::dimension;
use crate::Real;

/// Largest genus accepted by [`numeric_d`].
pub const MAX_NUMERIC_GENUS: u32 = 6;

/// Non-increasing `g`-tuples of non-negative integers summing to `total`.
fn ordered_compositions(g: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(slots: usize, remaining: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // the remaining slots can hold at most `slots * v` when led by v
        for v in (0..=cap.min(remaining)).rev() {
            if (slots as u32) * v < remaining {
                break;
            }
            prefix.push(v);
            go(slots - 1, remaining - v, v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(g, total, total, &mut Vec::with_capacity(g), &mut out);
    out
}

/// `D_{X,p}` for the unit diagonal direction `X = diag(sqrt(m_i))`.
///
/// The form `Y -> -B_0(X, Y)` is diagonal in the basis `E_ii`, `F_ij` with
/// eigenvalues `2 m_i` and `m_i + m_j`. The diagonal block is compressed to
/// the complement of `X` and diagonalized; `D_{X,p}` is `2·sum m_i^2` plus
/// the `p - 1` smallest eigenvalues of the compressed form.
pub fn direction_d(m: &[Real], p: usize) -> Real {
    let g = m.len();
    let alpha = DVector::from_iterator(g, m.iter().map(|x| x.sqrt()));
    // Householder reflection sending alpha to -e_1; its other columns are an
    // orthonormal basis of alpha's orthogonal complement.
    let mut v = alpha.clone();
    v[0] += 1.0;
    let reflector =
        DMatrix::<Real>::identity(g, g) - (&v * v.transpose()) * (2.0 / v.norm_squared());
    let complement = reflector.columns(1, g - 1).into_owned();
    let form = DMatrix::from_diagonal(&DVector::from_iterator(g, m.iter().map(|x| 2.0 * x)));
    let compressed = complement.transpose() * form * &complement;
    let compressed = (&compressed + compressed.transpose()) * 0.5;
    let mut spectrum: Vec<Real> = SymmetricEigen::new(compressed)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    for i in 0..g {
        for j in i + 1..g {
            spectrum.push(m[i] + m[j]);
        }
    }
    spectrum.sort_by(|a, b| a.total_cmp(b));
    let base: Real = 2.0 * m.iter().map(|x| x * x).sum::<Real>();
    base + spectrum.iter().take(p - 1).sum::<Real>()
}

/// Grid minimum of [`direction_d`] over the ordered simplex with step
/// `1/grid_steps`. An upper bound on `D_p` that converges as the grid
/// refines.
pub fn numeric_d(g: u32, p: u32, grid_steps: u32) -> Result<Real> {
    check_range("g", g as u64, 2, MAX_NUMERIC_GENUS as u64)?;
    check_range("p", p as u64, 1, dimension(g) as u64)?;
    check_range("grid_steps", grid_steps as u64, 10, 10_000)?;
    let step = grid_steps as Real;
    let best = ordered_compositions(g as usize, grid_steps)
        .into_iter()
        .map(|point| {
            let m: Vec<Real> = point.iter().map(|&k| k as Real / step).collect();
            direction_d(&m, p as usize)
        })
        .fold(Real::INFINITY, Real::min);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_ordered_and_complete() {
        let c = ordered_compositions(3, 4);
        // partitions of 4 into at most 3 parts
        assert_eq!(
            c,
            vec![vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![2, 1, 1]]
        );
    }

    #[test]
    fn direction_value_at_balanced_point() {
        let d = direction_d(&[0.5, 0.5], 2);
        assert!((d - 2.0).abs() < 1e-12);
        let d = direction_d(&[1.0, 0.0], 2);
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn full_dimension_gives_g_plus_one() {
        for m in [[0.5, 0.3, 0.2], [1.0, 0.0, 0.0], [0.4, 0.4, 0.2]] {
            let d = direction_d(&m, 6);
            assert!((d - 4.0).abs() < 1e-9, "{m:?} -> {d}");
        }
    }

    #[test]
    fn grid_values() {
        assert!((numeric_d(2, 2, 50).unwrap() - 2.0).abs() < 0.05);
        assert!((numeric_d(2, 3, 50).unwrap() - 3.0).abs() < 0.05);
        assert!((numeric_d(3, 1, 50).unwrap() - 2.0 / 3.0).abs() < 0.05);
        assert!(numeric_d(2, 2, 5).is_err());
    }
}
