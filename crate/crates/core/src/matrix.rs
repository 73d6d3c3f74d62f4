//! Band and dense matrix containers with exact rational entries.
//!
//! A [`BandMatrix`] is a square matrix whose nonzero entries are confined to
//! the diagonal band `|i - j| <= k`. Entries are stored sparsely by position;
//! zeros are never stored, and every stored value is strictly positive. All
//! public indices are 1-based.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// 1-based position `(row, column)`.
pub type Position = (usize, usize);

/// Row-major sorted list of the nonzero positions of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Support {
    pub positions: Vec<Position>,
}

impl Support {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, pos: &Position) -> bool {
        self.positions.binary_search(pos).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Position> {
        self.positions.iter()
    }
}

/// Square matrix with strictly positive rational entries inside a band of
/// half-width `k`; absent positions read as exact zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandMatrix {
    n: usize,
    k: usize,
    entries: BTreeMap<Position, Rational>,
}

impl BandMatrix {
    /// Builds a band matrix from `(i, j, value)` triplets.
    ///
    /// Zero values are dropped (they are representable but never stored);
    /// negative values, duplicate positions, positions outside `1..=n`, and
    /// nonzero values outside the band are rejected.
    pub fn from_triplets(
        n: usize,
        k: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, value) in triplets {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::OutOfRange(i, j));
            }
            if !seen.insert((i, j)) {
                return Err(Error::DuplicateEntry(i, j));
            }
            if value.is_negative() {
                return Err(Error::NegativeEntry(i, j));
            }
            if value.is_zero() {
                continue;
            }
            if i.abs_diff(j) > k {
                return Err(Error::OutOfBand(i, j, k));
            }
            entries.insert((i, j), value);
        }
        Ok(BandMatrix { n, k, entries })
    }

    pub fn zero(n: usize, k: usize) -> Self {
        BandMatrix {
            n,
            k,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based `(i, j)`; absent positions are exact zero.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&Rational> {
        self.entries.get(&(i, j))
    }

    /// Row-major sorted support.
    pub fn support(&self) -> Support {
        Support {
            positions: self.entries.keys().copied().collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Position, &Rational)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Transpose; same dimension and half-width.
    pub fn transpose(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), v)| ((j, i), v.clone()))
            .collect();
        BandMatrix {
            n: self.n,
            k: self.k,
            entries,
        }
    }

    /// The 0/1 matrix with the same support.
    pub fn support_pattern(&self) -> Self {
        let entries = self
            .entries
            .keys()
            .map(|&pos| (pos, Rational::one()))
            .collect();
        BandMatrix {
            n: self.n,
            k: self.k,
            entries,
        }
    }

    /// Effective bandwidth: the largest `|i - j|` over stored entries.
    pub fn effective_bandwidth(&self) -> usize {
        self.entries
            .keys()
            .map(|&(i, j)| i.abs_diff(j))
            .max()
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut dense = DenseMatrix::zeros(self.n, self.n);
        for (&(i, j), value) in &self.entries {
            dense.set(i, j, value.clone());
        }
        dense
    }

    /// Rescale by positive diagonal matrices: `D1 * M * D2`.
    pub fn diagonal_scale(&self, left: &[Rational], right: &[Rational]) -> Result<Self> {
        if left.len() != self.n || right.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "diagonal scaling of a {0}x{0} matrix needs {0} factors per side",
                self.n
            )));
        }
        if left.iter().chain(right.iter()).any(|d| !d.is_positive()) {
            return Err(Error::BadParameters(
                "diagonal scaling factors must be positive".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), v)| ((i, j), &left[i - 1] * v * &right[j - 1]))
            .collect();
        Ok(BandMatrix {
            n: self.n,
            k: self.k,
            entries,
        })
    }
}

use num_traits::One;

/// Rectangular dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    values: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            values: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(
                "rows of unequal length".to_string(),
            ));
        }
        Ok(DenseMatrix {
            rows: r,
            cols: c,
            values: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer rows, for tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::rat(x)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        &self.values[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i >= 1 && i <= self.rows && j >= 1 && j <= self.cols);
        self.values[(i - 1) * self.cols + (j - 1)] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Complementary submatrix: drops the given 1-based rows and columns,
    /// preserving the order of what remains.
    pub fn delete_rows_cols(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &r in rows {
            if r == 0 || r > self.rows {
                return Err(Error::OutOfRange(r, 0));
            }
        }
        for &c in cols {
            if c == 0 || c > self.cols {
                return Err(Error::OutOfRange(0, c));
            }
        }
        let drop_rows: std::collections::BTreeSet<usize> = rows.iter().copied().collect();
        let drop_cols: std::collections::BTreeSet<usize> = cols.iter().copied().collect();
        let kept_rows: Vec<usize> = (1..=self.rows).filter(|r| !drop_rows.contains(r)).collect();
        let kept_cols: Vec<usize> = (1..=self.cols).filter(|c| !drop_cols.contains(c)).collect();
        let mut out = Self::zeros(kept_rows.len(), kept_cols.len());
        for (io, &i) in kept_rows.iter().enumerate() {
            for (jo, &j) in kept_cols.iter().enumerate() {
                out.set(io + 1, jo + 1, self.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        (1..=self.rows)
            .map(|i| {
                (1..=self.cols)
                    .map(|j| format_rational(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
