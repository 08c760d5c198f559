//! Schmidt vectors, tensor products and Nielsen majorization.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{serde_scalar, Rational, Scalar};

/// The Schmidt coefficients of a bipartite pure state: a probability vector
/// kept in non-increasing order.
///
/// `dim` counts explicit zeros; `rank` counts strictly positive entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SchmidtVector<S: Scalar> {
    #[serde(serialize_with = "serde_scalar::vec")]
    entries: Vec<S>,
    dim: usize,
    rank: usize,
}

impl<S: Scalar> SchmidtVector<S> {
    /// Validates, optionally normalizes, and sorts `raw` into descending order.
    pub fn new(raw: Vec<S>, normalize: bool) -> Result<Self> {
        Self::with_tolerance(raw, normalize, &S::default_tolerance())
    }

    pub fn with_tolerance(raw: Vec<S>, normalize: bool, tol: &S) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut entries = Vec::with_capacity(raw.len());
        for (index, x) in raw.into_iter().enumerate() {
            if !S::EXACT && !x.to_f64().is_finite() {
                return Err(Error::NonFinite { index, value: x.to_string() });
            }
            if x < -tol.clone() {
                return Err(Error::NegativeEntry { index, value: x.to_string() });
            }
            // float round-off just below zero
            entries.push(if x.is_negative() { S::zero() } else { x });
        }
        let sum = entries.iter().fold(S::zero(), |acc, x| acc + x.clone());
        if normalize {
            if sum.is_zero() {
                return Err(Error::ZeroSum);
            }
            for x in entries.iter_mut() {
                *x = x.clone() / sum.clone();
            }
        } else if (sum.clone() - S::one()).abs() > *tol {
            return Err(Error::NotNormalized { sum: sum.to_string() });
        }
        Ok(Self::from_sorted_unchecked(sort_descending(entries)))
    }

    fn from_sorted_unchecked(entries: Vec<S>) -> Self {
        let rank = entries.iter().filter(|x| **x > S::zero()).count();
        SchmidtVector { dim: entries.len(), rank, entries }
    }

    /// The maximally entangled vector (1/n, ..., 1/n).
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform vector needs n > 0");
        Self::from_sorted_unchecked(vec![S::from_ratio(1, n as i64); n])
    }

    /// The product state (1, 0, ..., 0) of dimension `n`.
    pub fn product(n: usize) -> Self {
        assert!(n > 0, "product vector needs n > 0");
        let mut entries = vec![S::zero(); n];
        entries[0] = S::one();
        Self::from_sorted_unchecked(entries)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.dim
    }

    pub fn max_entry(&self) -> &S {
        &self.entries[0]
    }

    /// Zero-pads to `dim` entries (no-op when already that long or longer).
    pub fn padded(&self, dim: usize) -> Self {
        let mut entries = self.entries.clone();
        if entries.len() < dim {
            entries.resize(dim, S::zero());
        }
        Self::from_sorted_unchecked(entries)
    }

    /// The non-zero part of the vector (`dim == rank`).
    pub fn support(&self) -> Self {
        Self::from_sorted_unchecked(self.entries[..self.rank].to_vec())
    }

    /// Descending partial sums; the last one is the total (1).
    pub fn partial_sums(&self) -> Vec<S> {
        self.entries
            .iter()
            .scan(S::zero(), |acc, x| {
                *acc = acc.clone() + x.clone();
                Some(acc.clone())
            })
            .collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        tensor(self, other)
    }

    pub fn to_f64(&self) -> SchmidtVector<f64> {
        SchmidtVector {
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
            dim: self.dim,
            rank: self.rank,
        }
    }

    /// Exact copy of the vector, if its entries are exact.
    pub fn to_exact(&self) -> Option<SchmidtVector<Rational>> {
        let entries = self
            .entries
            .iter()
            .map(Scalar::to_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(SchmidtVector { entries, dim: self.dim, rank: self.rank })
    }
}

fn sort_descending<S: Scalar>(mut v: Vec<S>) -> Vec<S> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    v
}

/// Builds a validated Schmidt vector from raw coefficients.
pub fn make_schmidt_vector<S: Scalar>(raw: Vec<S>, normalize: bool) -> Result<SchmidtVector<S>> {
    SchmidtVector::new(raw, normalize)
}

/// Schmidt vector of the product state: all pairwise products, re-sorted.
pub fn tensor<S: Scalar>(a: &SchmidtVector<S>, b: &SchmidtVector<S>) -> SchmidtVector<S> {
    let entries = a
        .entries
        .iter()
        .flat_map(|x| b.entries.iter().map(move |y| x.clone() * y.clone()))
        .collect();
    let mut out = SchmidtVector::from_sorted_unchecked(sort_descending(entries));
    // float products of tiny entries can underflow; rank is structural
    out.rank = a.rank * b.rank;
    out
}

/// Outcome of the descending partial-sum test `lhs ≺ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct MajorizationReport<S: Scalar> {
    pub majorizes: bool,
    #[serde(serialize_with = "serde_scalar::vec")]
    pub partial_sums_lhs: Vec<S>,
    #[serde(serialize_with = "serde_scalar::vec")]
    pub partial_sums_rhs: Vec<S>,
    /// 1-based index of the first k with lhs_k > rhs_k.
    pub first_violation_k: Option<usize>,
    /// min over k < N of rhs_k − lhs_k (zero when N = 1).
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub margin: S,
}

/// Decides σ(ψ) ≺ σ(φ), i.e. whether ψ → φ is possible under plain LOCC.
pub fn majorization_check<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
) -> MajorizationReport<S> {
    majorization_check_with_tolerance(psi, phi, &S::default_tolerance())
}

pub fn majorization_check_with_tolerance<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    tol: &S,
) -> MajorizationReport<S> {
    let n = psi.dim.max(phi.dim);
    let lhs = psi.padded(n).partial_sums();
    let rhs = phi.padded(n).partial_sums();
    let mut margin: Option<S> = None;
    let mut first_violation_k = None;
    for (k, (l, r)) in lhs.iter().zip(&rhs).enumerate().take(n - 1) {
        let slack = r.clone() - l.clone();
        if first_violation_k.is_none() && slack < -tol.clone() {
            first_violation_k = Some(k + 1);
        }
        if margin.as_ref().is_none_or(|m| slack < *m) {
            margin = Some(slack);
        }
    }
    MajorizationReport {
        majorizes: first_violation_k.is_none(),
        partial_sums_lhs: lhs,
        partial_sums_rhs: rhs,
        first_violation_k,
        margin: margin.unwrap_or_else(S::zero),
    }
}

/// Independent majorization oracles used to cross-check [`majorization_check`].
pub mod oracle {
    use super::*;

    /// `x ≺ y` via the hinge characterization: for every threshold t,
    /// Σ (x_i − t)^+ ≤ Σ (y_i − t)^+. Thresholds at the entries suffice.
    /// No sorting or partial sums are involved. Exact arithmetic only.
    pub fn majorized_by_hinge(x: &[Rational], y: &[Rational]) -> bool {
        let hinge = |v: &[Rational], t: &Rational| -> Rational {
            v.iter()
                .filter(|a| *a > t)
                .fold(Rational::from_ratio(0, 1), |acc, a| acc + (a - t))
        };
        let sx = x.iter().fold(Rational::from_ratio(0, 1), |a, b| a + b);
        let sy = y.iter().fold(Rational::from_ratio(0, 1), |a, b| a + b);
        if sx != sy {
            return false;
        }
        x.iter()
            .chain(y)
            .all(|t| hinge(x, t) <= hinge(y, t))
    }

    /// Sum of the k largest entries by maximizing over all k-subsets.
    /// Exponential; for small vectors only.
    pub fn top_k_sum_brute(v: &[Rational], k: usize) -> Rational {
        let n = v.len();
        let mut best: Option<Rational> = None;
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let s = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .fold(Rational::from_ratio(0, 1), |acc, i| acc + &v[i]);
            if best.as_ref().is_none_or(|b| s > *b) {
                best = Some(s);
            }
        }
        best.unwrap_or_else(|| Rational::from_ratio(0, 1))
    }
}
