//! Exact factorization ranks of band matrices over the Boolean, fuzzy,
//! tropical, and nonnegative semirings.
//!
//! Everything is computed in exact rational arithmetic. Boolean, fuzzy, and
//! tropical ranks of a k-band matrix are obtained as minimum covers of the
//! support by admissible sets, solved by a bounded-window dynamic program;
//! the nonnegative rank of a tridiagonal matrix is computed in O(n)
//! arithmetic operations. Every computed rank ships with a certificate (an
//! explicit list of rank-one summands) that reconstructs the input exactly,
//! and independent brute-force oracles are provided for all ranks.

pub mod admissible;
pub mod bmx;
pub mod cover;
pub mod error;
pub mod generate;
pub mod matrix;
pub mod rank;
pub mod rational;
pub mod report;
pub mod semiring;
pub mod tridiag;

pub use error::{Error, Result};
pub use matrix::{BandMatrix, DenseMatrix, Position, Support};
pub use rational::{format_rational, parse_rational, Rational};
pub use semiring::{
    certificate_matrix, semiring_multiply, verify_certificate, RankCertificate, RankOneSummand,
    SemiringKind,
};
