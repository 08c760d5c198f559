//! Reference inputs shared by tests, benches and the CLI self-test.

use crate::scalar::{Rational, Scalar};
use crate::schmidt::SchmidtVector;

fn exact(v: &[(i64, i64)]) -> SchmidtVector<Rational> {
    SchmidtVector::new(v.iter().map(|&(n, d)| Rational::from_ratio(n, d)).collect(), false)
        .expect("fixture is a valid probability vector")
}

/// A six-level pair that is not LOCC-convertible but is catalytically
/// convertible, with a non-monotone C_5.
pub fn six_level_pair() -> (SchmidtVector<Rational>, SchmidtVector<Rational>) {
    (
        exact(&[(19, 351), (1, 13), (64, 351), (71, 351), (3, 13), (89, 351)]),
        exact(&[(9, 196), (25, 196), (13, 98), (5, 28), (3, 14), (59, 196)]),
    )
}

/// The textbook two-qubit catalysis instance: (2/5, 2/5, 1/10, 1/10) to
/// (1/2, 1/4, 1/4, 0) with catalyst (3/5, 2/5).
pub fn two_qubit_catalysis() -> (
    SchmidtVector<Rational>,
    SchmidtVector<Rational>,
    SchmidtVector<Rational>,
) {
    (
        exact(&[(2, 5), (2, 5), (1, 10), (1, 10)]),
        exact(&[(1, 2), (1, 4), (1, 4), (0, 1)]),
        exact(&[(3, 5), (2, 5)]),
    )
}
