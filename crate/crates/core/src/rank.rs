//! Exact conventional rank over the rationals.
//!
//! Denominators are cleared per row (rank-preserving) and the resulting
//! integer matrix is reduced by fraction-free Bareiss elimination, which keeps
//! every intermediate value an exact integer and controls coefficient growth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::DenseMatrix;

/// Conventional rank of a dense rational matrix, exact.
pub fn rational_rank(matrix: &DenseMatrix) -> usize {
    let rows = matrix.rows();
    let cols = matrix.cols();
    if rows == 0 || cols == 0 {
        return 0;
    }
    // Clear denominators row by row.
    let mut grid: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for i in 1..=rows {
        let mut lcm = BigInt::one();
        for j in 1..=cols {
            lcm = lcm.lcm(matrix.get(i, j).denom());
        }
        grid.push(
            (1..=cols)
                .map(|j| {
                    let v = matrix.get(i, j);
                    v.numer() * (&lcm / v.denom())
                })
                .collect(),
        );
    }

    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    let mut pivot_col = 0;
    while rank < rows && pivot_col < cols {
        // Find a row with a nonzero entry in the pivot column.
        let pivot_row = (rank..rows).find(|&r| !grid[r][pivot_col].is_zero());
        let Some(pivot_row) = pivot_row else {
            pivot_col += 1;
            continue;
        };
        grid.swap(rank, pivot_row);
        let pivot = grid[rank][pivot_col].clone();
        for r in rank + 1..rows {
            let factor = grid[r][pivot_col].clone();
            for c in pivot_col..cols {
                let value = &pivot * &grid[r][c] - &factor * &grid[rank][c];
                // Exact by the Bareiss identity.
                grid[r][c] = value / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        pivot_col += 1;
    }
    rank
}

/// Determinant of a square rational matrix by cofactor expansion.
///
/// Exponential; lives here as the independent cross-check used by tests
/// (minor expansion is a different computation path than elimination).
pub fn determinant_by_minors(matrix: &DenseMatrix) -> crate::rational::Rational {
    assert_eq!(matrix.rows(), matrix.cols());
    let n = matrix.rows();
    if n == 0 {
        return crate::rational::rat(1);
    }
    if n == 1 {
        return matrix.get(1, 1).clone();
    }
    let mut det = crate::rational::Rational::zero();
    for j in 1..=n {
        let entry = matrix.get(1, j);
        if entry.is_zero() {
            continue;
        }
        let minor = matrix
            .delete_rows_cols(&[1], &[j])
            .expect("indices in range");
        let term = entry * determinant_by_minors(&minor);
        if j % 2 == 1 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Rank by brute-force minor expansion: the largest `r` such that some
/// `r x r` submatrix has nonzero determinant. Exponential oracle for tests.
pub fn rank_by_minors(matrix: &DenseMatrix) -> usize {
    let rows = matrix.rows();
    let cols = matrix.cols();
    let max = rows.min(cols);
    for size in (1..=max).rev() {
        for row_set in combinations(rows, size) {
            for col_set in combinations(cols, size) {
                let drop_rows: Vec<usize> =
                    (1..=rows).filter(|r| !row_set.contains(r)).collect();
                let drop_cols: Vec<usize> =
                    (1..=cols).filter(|c| !col_set.contains(c)).collect();
                let sub = matrix
                    .delete_rows_cols(&drop_rows, &drop_cols)
                    .expect("indices in range");
                if !determinant_by_minors(&sub).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for v in start..=n {
            current.push(v);
            go(v + 1, n, size, current, out);
            current.pop();
        }
    }
    go(1, n, size, &mut current, &mut out);
    out
}
