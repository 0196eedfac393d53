//! Exact Gaussian elimination over the rationals: rank, unique solve, and
//! nullspace, shared by the series solver and the singularity analysis.

use super::Rational;
use num_traits::Zero;

/// Bring `mat` to reduced row echelon form in place; returns the pivot
/// columns (their count is the rank).
pub(crate) fn rref(mat: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].recip();
        for c in col..cols {
            mat[row][c] = &mat[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..cols {
                    mat[r][c] = &mat[r][c] - &(&factor * &mat[row][c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Rank of the matrix.
pub(crate) fn rank(mut mat: Vec<Vec<Rational>>) -> usize {
    rref(&mut mat).len()
}

/// Solve `A x = b` when `A` has full column rank; `None` if the rank is
/// deficient or the system is inconsistent.
pub(crate) fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if cols == 0 {
        return if b.iter().all(|v| v.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let mut mat: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut mat);
    // the augmented column must not be a pivot, and all data columns must be
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = mat[i][cols].clone();
    }
    Some(x)
}

/// A basis of the nullspace of `A`, one vector per free column.
pub(crate) fn nullspace(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut mat: Vec<Vec<Rational>> = a.to_vec();
    let pivots = rref(&mut mat);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -mat[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    #[test]
    fn rank_solve_nullspace() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(1), rat(0), rat(1)],
        ];
        assert_eq!(rank(m.clone()), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        // check A v = 0
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        let a = vec![vec![rat(2), rat(0)], vec![rat(0), rat(4)], vec![rat(2), rat(4)]];
        let b = vec![rat(1), rat(2), rat(3)];
        let x = solve_unique(&a, &b).unwrap();
        assert_eq!(x, vec![ratio(1, 2), ratio(1, 2)]);
        // inconsistent
        let b_bad = vec![rat(1), rat(2), rat(4)];
        assert!(solve_unique(&a, &b_bad).is_none());
    }
}
