//! The four semirings, semiring matrix products, and rank certificates.
//!
//! The tropical semiring is used in its multiplicative form `(Q>=0, max, *)`
//! so that every computation stays inside the exact rationals; the log form
//! would force inexact reals. Boolean matrices are ordinary matrices with
//! entries 0 and 1, sharing a single code path with the other kinds.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{BandMatrix, DenseMatrix};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemiringKind {
    /// `({0,1}, max, *)`
    Boolean,
    /// `([0,1] ∩ Q, max, min)`
    Fuzzy,
    /// `(Q>=0, max, *)`
    Tropical,
    /// `(Q>=0, +, *)`
    Nonnegative,
}

impl SemiringKind {
    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Boolean => "boolean",
            SemiringKind::Fuzzy => "fuzzy",
            SemiringKind::Tropical => "tropical",
            SemiringKind::Nonnegative => "nonneg",
        }
    }

    /// Semiring addition.
    pub fn add(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            SemiringKind::Nonnegative => a + b,
            _ => a.max(b).clone(),
        }
    }

    /// Semiring multiplication.
    pub fn mul(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            SemiringKind::Fuzzy => a.min(b).clone(),
            _ => a * b,
        }
    }

    /// Checks membership in the kind's carrier.
    pub fn check_carrier(self, value: &Rational) -> Result<()> {
        let ok = match self {
            SemiringKind::Boolean => value.is_zero() || value.is_one(),
            SemiringKind::Fuzzy => !value.is_negative() && *value <= Rational::one(),
            SemiringKind::Tropical | SemiringKind::Nonnegative => !value.is_negative(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CarrierViolation(self.name(), format_rational(value)))
        }
    }

    pub fn check_matrix_carrier(self, matrix: &BandMatrix) -> Result<()> {
        for (_, value) in matrix.iter() {
            self.check_carrier(value)?;
        }
        Ok(())
    }

    /// Addition is idempotent max for all kinds except the nonnegative reals.
    pub fn is_max_based(self) -> bool {
        !matches!(self, SemiringKind::Nonnegative)
    }
}

/// `(B ⊙ C)_ij = ⊕_t B_it ⊙ C_tj` with the kind's operations.
pub fn semiring_multiply(
    lhs: &DenseMatrix,
    rhs: &DenseMatrix,
    kind: SemiringKind,
) -> Result<DenseMatrix> {
    if lhs.cols() != rhs.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    for i in 1..=lhs.rows() {
        for t in 1..=lhs.cols() {
            kind.check_carrier(lhs.get(i, t))?;
        }
    }
    for t in 1..=rhs.rows() {
        for j in 1..=rhs.cols() {
            kind.check_carrier(rhs.get(t, j))?;
        }
    }
    let mut out = DenseMatrix::zeros(lhs.rows(), rhs.cols());
    for i in 1..=lhs.rows() {
        for j in 1..=rhs.cols() {
            let mut acc = Rational::zero();
            for t in 1..=lhs.cols() {
                let term = kind.mul(lhs.get(i, t), rhs.get(t, j));
                acc = kind.add(&acc, &term);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// One rank-one summand: positive weights `u` over a row scope and `v` over a
/// column scope. It denotes the matrix `Q` with `Q_ij = u_i ⊙ v_j` on the
/// rectangle `rows x cols` and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneSummand {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(with = "crate::rational::serde_string_vec")]
    pub row_weights: Vec<Rational>,
    #[serde(with = "crate::rational::serde_string_vec")]
    pub col_weights: Vec<Rational>,
}

impl RankOneSummand {
    pub fn new(
        rows: Vec<usize>,
        cols: Vec<usize>,
        row_weights: Vec<Rational>,
        col_weights: Vec<Rational>,
    ) -> Self {
        assert_eq!(rows.len(), row_weights.len());
        assert_eq!(cols.len(), col_weights.len());
        RankOneSummand {
            rows,
            cols,
            row_weights,
            col_weights,
        }
    }

    /// All-ones summand over a rectangle (the Boolean witness).
    pub fn rectangle(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let ru = vec![Rational::one(); rows.len()];
        let cu = vec![Rational::one(); cols.len()];
        Self::new(rows, cols, ru, cu)
    }

    pub fn entries(&self, kind: SemiringKind) -> Vec<((usize, usize), Rational)> {
        let mut out = Vec::with_capacity(self.rows.len() * self.cols.len());
        for (i, ui) in self.rows.iter().zip(&self.row_weights) {
            for (j, vj) in self.cols.iter().zip(&self.col_weights) {
                out.push(((*i, *j), kind.mul(ui, vj)));
            }
        }
        out
    }

    fn max_index(&self) -> usize {
        self.rows
            .iter()
            .chain(self.cols.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Explicit factorization witness: a list of rank-one summands whose semiring
/// sum reconstructs the matrix. The number of summands is the claimed rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub kind: SemiringKind,
    pub summands: Vec<RankOneSummand>,
}

impl RankCertificate {
    pub fn empty(kind: SemiringKind) -> Self {
        RankCertificate {
            kind,
            summands: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Assembles the factor pair `(B, C)` with inner dimension equal to the
    /// summand count: column `t` of `B` is `u` of summand `t` extended by
    /// zeros, row `t` of `C` is `v` extended by zeros. For every kind,
    /// `B ⊙ C` equals the semiring sum of the summands.
    pub fn factor_pair(&self, n: usize) -> (DenseMatrix, DenseMatrix) {
        let r = self.summands.len();
        let mut left = DenseMatrix::zeros(n, r);
        let mut right = DenseMatrix::zeros(r, n);
        for (t, summand) in self.summands.iter().enumerate() {
            for (i, ui) in summand.rows.iter().zip(&summand.row_weights) {
                left.set(*i, t + 1, ui.clone());
            }
            for (j, vj) in summand.cols.iter().zip(&summand.col_weights) {
                right.set(t + 1, *j, vj.clone());
            }
        }
        (left, right)
    }
}

/// Dense semiring sum of the certificate's summands: entrywise max for the
/// max-based kinds, entrywise + for the nonnegative reals.
pub fn certificate_matrix(cert: &RankCertificate, n: usize) -> Result<DenseMatrix> {
    let mut out = DenseMatrix::zeros(n, n);
    for summand in &cert.summands {
        let top = summand.max_index();
        if top > n
            || summand.rows.iter().any(|&i| i == 0)
            || summand.cols.iter().any(|&j| j == 0)
        {
            return Err(Error::OutOfRange(top, top));
        }
        for ((i, j), value) in summand.entries(cert.kind) {
            let merged = cert.kind.add(out.get(i, j), &value);
            out.set(i, j, merged);
        }
    }
    Ok(out)
}

/// Sparse semiring sum keyed by position; equals `certificate_matrix` on the
/// common support but costs only the summands' rectangle areas.
pub fn certificate_entries(
    cert: &RankCertificate,
) -> std::collections::BTreeMap<(usize, usize), Rational> {
    let mut acc = std::collections::BTreeMap::new();
    for summand in &cert.summands {
        for ((i, j), value) in summand.entries(cert.kind) {
            acc.entry((i, j))
                .and_modify(|old: &mut Rational| *old = cert.kind.add(old, &value))
                .or_insert(value);
        }
    }
    acc
}

/// True iff the certificate reconstructs `matrix` entrywise, exactly.
pub fn verify_certificate(matrix: &BandMatrix, cert: &RankCertificate) -> bool {
    let n = matrix.n();
    for summand in &cert.summands {
        if summand.max_index() > n
            || summand.rows.iter().any(|&i| i == 0)
            || summand.cols.iter().any(|&j| j == 0)
        {
            return false;
        }
    }
    let reconstructed = certificate_entries(cert);
    // Positions produced with value zero are legal only where the matrix is
    // zero; positive positions must match the support exactly.
    for ((i, j), value) in &reconstructed {
        if *value != matrix.get(*i, *j) {
            return false;
        }
    }
    for (&(i, j), _) in matrix.iter() {
        match reconstructed.get(&(i, j)) {
            Some(v) if *v == matrix.get(i, j) => {}
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn dm(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_i64_rows(rows)
    }

    #[test]
    fn tropical_product_takes_max_of_products() {
        let b = dm(&[&[1, 2]]);
        let c = dm(&[&[3], &[1]]);
        let p = semiring_multiply(&b, &c, SemiringKind::Tropical).unwrap();
        assert_eq!(p.get(1, 1), &rat(3));
    }

    #[test]
    fn fuzzy_product_is_max_of_mins() {
        let b = DenseMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 4)]]).unwrap();
        let c = DenseMatrix::from_rows(vec![vec![ratio(1, 2)], vec![rat(1)]]).unwrap();
        let p = semiring_multiply(&b, &c, SemiringKind::Fuzzy).unwrap();
        assert_eq!(p.get(1, 1), &ratio(1, 2));
    }

    #[test]
    fn nonnegative_identity_is_neutral() {
        let m = dm(&[&[1, 2, 0], &[0, 3, 1], &[0, 0, 2]]);
        let p = semiring_multiply(&DenseMatrix::identity(3), &m, SemiringKind::Nonnegative).unwrap();
        assert_eq!(p, m);
    }

    #[test]
    fn carrier_and_dimension_errors() {
        let b = dm(&[&[2]]);
        assert!(matches!(
            semiring_multiply(&b, &b, SemiringKind::Boolean),
            Err(Error::CarrierViolation(..))
        ));
        let c = dm(&[&[1, 1]]);
        assert!(matches!(
            semiring_multiply(&c, &c, SemiringKind::Tropical),
            Err(Error::DimensionMismatch(_))
        ));
        let f = DenseMatrix::from_rows(vec![vec![ratio(3, 2)]]).unwrap();
        assert!(matches!(
            semiring_multiply(&f, &f, SemiringKind::Fuzzy),
            Err(Error::CarrierViolation(..))
        ));
    }

    #[test]
    fn multiply_is_associative_on_random_triples() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for kind in [
            SemiringKind::Boolean,
            SemiringKind::Fuzzy,
            SemiringKind::Tropical,
            SemiringKind::Nonnegative,
        ] {
            for _ in 0..25 {
                let dims: Vec<usize> = (0..4).map(|_| 1 + (next() % 3) as usize).collect();
                let sample = |rows: usize, cols: usize, next: &mut dyn FnMut() -> u64| {
                    DenseMatrix::from_rows(
                        (0..rows)
                            .map(|_| {
                                (0..cols)
                                    .map(|_| match kind {
                                        SemiringKind::Boolean => rat((next() % 2) as i64),
                                        SemiringKind::Fuzzy => {
                                            let den = 1 + (next() % 4) as i64;
                                            let num = next() as i64 % (den + 1);
                                            ratio(num.abs(), den)
                                        }
                                        _ => ratio((next() % 5) as i64, 1 + (next() % 3) as i64),
                                    })
                                    .collect()
                            })
                            .collect(),
                    )
                    .unwrap()
                };
                let a = sample(dims[0], dims[1], &mut next);
                let b = sample(dims[1], dims[2], &mut next);
                let c = sample(dims[2], dims[3], &mut next);
                let left = semiring_multiply(&semiring_multiply(&a, &b, kind).unwrap(), &c, kind)
                    .unwrap();
                let right = semiring_multiply(&a, &semiring_multiply(&b, &c, kind).unwrap(), kind)
                    .unwrap();
                assert_eq!(left, right, "associativity failed for {kind:?}");
            }
        }
    }

    #[test]
    fn certificate_matrix_cases() {
        let empty = RankCertificate::empty(SemiringKind::Tropical);
        assert_eq!(certificate_matrix(&empty, 2).unwrap(), DenseMatrix::zeros(2, 2));

        let ones = RankCertificate {
            kind: SemiringKind::Tropical,
            summands: vec![RankOneSummand::rectangle(vec![1, 2], vec![1, 2])],
        };
        assert_eq!(
            certificate_matrix(&ones, 2).unwrap(),
            dm(&[&[1, 1], &[1, 1]])
        );

        // Two nonnegative summands adding up entrywise.
        let cert = RankCertificate {
            kind: SemiringKind::Nonnegative,
            summands: vec![
                RankOneSummand::rectangle(vec![1, 2], vec![1, 2]),
                RankOneSummand::rectangle(vec![2, 3], vec![3]),
            ],
        };
        assert_eq!(
            certificate_matrix(&cert, 3).unwrap(),
            dm(&[&[1, 1, 0], &[1, 1, 1], &[0, 0, 1]])
        );
        // Out-of-range scope is rejected.
        assert!(certificate_matrix(&cert, 2).is_err());
    }

    #[test]
    fn verify_certificate_cases() {
        let zero = BandMatrix::zero(3, 1);
        assert!(verify_certificate(
            &zero,
            &RankCertificate::empty(SemiringKind::Boolean)
        ));

        let ones = BandMatrix::from_triplets(
            2,
            1,
            vec![
                (1, 1, rat(1)),
                (1, 2, rat(1)),
                (2, 1, rat(1)),
                (2, 2, rat(1)),
            ],
        )
        .unwrap();
        let good = RankCertificate {
            kind: SemiringKind::Tropical,
            summands: vec![RankOneSummand::rectangle(vec![1, 2], vec![1, 2])],
        };
        assert!(verify_certificate(&ones, &good));

        let bad = RankCertificate {
            kind: SemiringKind::Tropical,
            summands: vec![RankOneSummand::new(
                vec![1, 2],
                vec![1, 2],
                vec![rat(1), rat(2)],
                vec![rat(1), rat(1)],
            )],
        };
        assert!(!verify_certificate(&ones, &bad));
    }

    #[test]
    fn factor_pair_multiplies_back_to_certificate_matrix() {
        for kind in [
            SemiringKind::Boolean,
            SemiringKind::Fuzzy,
            SemiringKind::Tropical,
            SemiringKind::Nonnegative,
        ] {
            let value = if kind == SemiringKind::Boolean {
                rat(1)
            } else {
                ratio(1, 2)
            };
            let cert = RankCertificate {
                kind,
                summands: vec![
                    RankOneSummand::new(vec![1, 2], vec![2], vec![value.clone(), value.clone()], vec![value.clone()]),
                    RankOneSummand::rectangle(vec![3], vec![3]),
                ],
            };
            let (b, c) = cert.factor_pair(3);
            assert_eq!(
                semiring_multiply(&b, &c, kind).unwrap(),
                certificate_matrix(&cert, 3).unwrap(),
                "factor pair mismatch for {kind:?}"
            );
        }
    }

    #[test]
    fn adding_summands_is_monotone_for_max_kinds() {
        for kind in [SemiringKind::Boolean, SemiringKind::Fuzzy, SemiringKind::Tropical] {
            let mut cert = RankCertificate::empty(kind);
            let mut previous = certificate_matrix(&cert, 3).unwrap();
            for t in 1..=3 {
                cert.summands
                    .push(RankOneSummand::rectangle(vec![t], vec![t]));
                let current = certificate_matrix(&cert, 3).unwrap();
                for i in 1..=3 {
                    for j in 1..=3 {
                        assert!(current.get(i, j) >= previous.get(i, j));
                    }
                }
                previous = current;
            }
        }
    }
}
