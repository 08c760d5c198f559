//! Elementary symmetric polynomials, power sums and Newton's identities.
//!
//! The elementary polynomials of a tensor product are obtained without
//! materializing it: power sums are multiplicative, p_l(x⊗y) = p_l(x)·p_l(y),
//! so we convert to power sums, multiply, and convert back.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{binomial, pow, serde_scalar, Scalar};
use crate::schmidt::SchmidtVector;

/// How a table's power sums were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerSumSource {
    /// Σ x_i^l summed directly from the vector.
    Direct,
    /// Converted from the elementary polynomials by Newton's identities.
    Newton,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SymmetricFunctionTable<S: Scalar> {
    pub source_dim: usize,
    /// e_0, e_1, ..., e_d.
    #[serde(serialize_with = "serde_scalar::vec")]
    pub elementary: Vec<S>,
    /// p_1, ..., p_L when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_sums: Option<(PowerSumSource, PowerSums<S>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""), transparent)]
pub struct PowerSums<S: Scalar>(#[serde(serialize_with = "serde_scalar::vec")] pub Vec<S>);

impl<S: Scalar> SymmetricFunctionTable<S> {
    pub fn e(&self, k: usize) -> S {
        self.elementary.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Largest k with e_k ≠ 0, i.e. the rank of the source vector.
    pub fn rank(&self) -> usize {
        self.elementary.iter().rposition(|e| !e.is_zero()).unwrap_or(0)
    }

    /// p_1..p_l, reusing stored power sums when they are long enough.
    pub fn power_sums_up_to(&self, l: usize) -> Vec<S> {
        match &self.power_sums {
            Some((_, p)) if p.0.len() >= l => p.0[..l].to_vec(),
            _ => p_from_e(&self.elementary, l),
        }
    }

    pub fn with_power_sums(mut self, x: &SchmidtVector<S>, l: usize) -> Self {
        self.power_sums = Some((PowerSumSource::Direct, PowerSums(power_sums(x, l))));
        self
    }
}

/// e_0..e_n of arbitrary values by expanding ∏(1 + x_i t).
pub fn elementary_of<S: Scalar>(values: &[S]) -> Vec<S> {
    let n = values.len();
    let mut e = vec![S::zero(); n + 1];
    e[0] = S::one();
    for (i, x) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let term = e[k - 1].clone() * x.clone();
            e[k] = e[k].clone() + term;
        }
    }
    e
}

pub fn elementary_all<S: Scalar>(x: &SchmidtVector<S>) -> SymmetricFunctionTable<S> {
    SymmetricFunctionTable {
        source_dim: x.dim(),
        elementary: elementary_of(x.entries()),
        power_sums: None,
    }
}

/// [p_1, ..., p_L].
pub fn power_sums<S: Scalar>(x: &SchmidtVector<S>, l_max: usize) -> Vec<S> {
    power_sums_of(x.entries(), l_max)
}

pub fn power_sums_of<S: Scalar>(values: &[S], l_max: usize) -> Vec<S> {
    let mut powers: Vec<S> = values.to_vec();
    let mut out = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        if l > 1 {
            for (p, x) in powers.iter_mut().zip(values) {
                *p = p.clone() * x.clone();
            }
        }
        out.push(powers.iter().fold(S::zero(), |acc, p| acc + p.clone()));
    }
    out
}

/// [e_0, ..., e_kmax] from power sums p = [p_1, p_2, ...] by
/// k·e_k = Σ_{l=1..k} (−1)^{l−1} e_{k−l} p_l.
pub fn e_from_p<S: Scalar>(p: &[S], k_max: usize) -> Result<Vec<S>> {
    if p.len() < k_max {
        return Err(Error::IndexOutOfRange { index: k_max, min: 0, max: p.len() });
    }
    let mut e = Vec::with_capacity(k_max + 1);
    e.push(S::one());
    for k in 1..=k_max {
        let mut acc = S::zero();
        for l in 1..=k {
            let term = e[k - l].clone() * p[l - 1].clone();
            acc = if l % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc / S::from_usize(k));
    }
    Ok(e)
}

/// [p_1, ..., p_lmax] from e = [e_0, e_1, ...] (missing e_k read as zero) by
/// p_l = (−1)^{l−1} l e_l + Σ_{i=1..l−1} (−1)^{i−1} e_i p_{l−i}.
pub fn p_from_e<S: Scalar>(e: &[S], l_max: usize) -> Vec<S> {
    let e_at = |k: usize| e.get(k).cloned().unwrap_or_else(S::zero);
    let mut p: Vec<S> = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let lead = S::from_usize(l) * e_at(l);
        let mut acc = if l % 2 == 1 { lead } else { -lead };
        for i in 1..l {
            let ei = e_at(i);
            if ei.is_zero() {
                continue;
            }
            let term = ei * p[l - i - 1].clone();
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        p.push(acc);
    }
    p
}

/// e_0..e_{N} of x⊗y for N = dim(x)·dim(y), through power sums.
pub fn elementary_tensor_all<S: Scalar>(
    tx: &SymmetricFunctionTable<S>,
    ty: &SymmetricFunctionTable<S>,
) -> Vec<S> {
    let n = tx.source_dim * ty.source_dim;
    elementary_tensor_up_to(tx, ty, n)
}

fn elementary_tensor_up_to<S: Scalar>(
    tx: &SymmetricFunctionTable<S>,
    ty: &SymmetricFunctionTable<S>,
    k_max: usize,
) -> Vec<S> {
    let px = tx.power_sums_up_to(k_max);
    let py = ty.power_sums_up_to(k_max);
    let pz: Vec<S> = px.into_iter().zip(py).map(|(a, b)| a * b).collect();
    e_from_p(&pz, k_max).expect("power sum list has k_max entries")
}

/// e_k(x⊗y) computed from the two tables alone.
pub fn e_tensor<S: Scalar>(
    tx: &SymmetricFunctionTable<S>,
    ty: &SymmetricFunctionTable<S>,
    k: usize,
) -> Result<S> {
    let max = tx.source_dim * ty.source_dim;
    if k > max {
        return Err(Error::IndexOutOfRange { index: k, min: 0, max });
    }
    Ok(elementary_tensor_up_to(tx, ty, k).swap_remove(k))
}

/// e_k(1/x) = e_{d−k}(x) / e_d(x) for a vector with no zero entries.
pub fn e_reciprocal<S: Scalar>(x: &SchmidtVector<S>, k: usize) -> Result<S> {
    let d = x.dim();
    if !x.is_full_rank() {
        return Err(Error::ZeroEntry { rank: x.rank(), dim: d });
    }
    if k > d {
        return Err(Error::IndexOutOfRange { index: k, min: 0, max: d });
    }
    let e = elementary_of(x.entries());
    Ok(e[d - k].clone() / e[d].clone())
}

/// e_k(ι_n) = C(n,k)/n^k, the value at the uniform vector of length n.
pub fn uniform_elementary<S: Scalar>(n: usize, k: usize) -> S {
    S::from_bigint(&binomial(n, k)) / pow(&S::from_usize(n), k)
}

/// Closed-form expansions of e_k(x⊗y) in terms of the factors' e_j, for
/// k ∈ {1, 2, 3, N−1, N} with N = rank(x)·rank(y). Valid for unnormalized
/// inputs; used to cross-check the power-sum route.
pub mod expanded {
    use super::*;

    fn e<S: Scalar>(t: &SymmetricFunctionTable<S>, k: usize) -> S {
        t.e(k)
    }

    pub fn e1<S: Scalar>(x: &SymmetricFunctionTable<S>, y: &SymmetricFunctionTable<S>) -> S {
        e(x, 1) * e(y, 1)
    }

    pub fn e2<S: Scalar>(x: &SymmetricFunctionTable<S>, y: &SymmetricFunctionTable<S>) -> S {
        let (x1, x2, y1, y2) = (e(x, 1), e(x, 2), e(y, 1), e(y, 2));
        let two = S::from_usize(2);
        x1.clone() * x1 * y2.clone() + x2.clone() * y1.clone() * y1 - two * x2 * y2
    }

    pub fn e3<S: Scalar>(x: &SymmetricFunctionTable<S>, y: &SymmetricFunctionTable<S>) -> S {
        let (x1, x2, x3) = (e(x, 1), e(x, 2), e(x, 3));
        let (y1, y2, y3) = (e(y, 1), e(y, 2), e(y, 3));
        let three = S::from_usize(3);
        x3.clone() * pow(&y1, 3) + pow(&x1, 3) * y3.clone()
            + x1.clone() * x2.clone() * y1.clone() * y2.clone()
            - three.clone() * x1 * x2 * y3.clone()
            - three.clone() * x3.clone() * y1 * y2
            + three * x3 * y3
    }

    /// e_{N−1}(x⊗y) = e_{d1}(x)^{d2−1} e_{d2}(y)^{d1−1} e_{d1−1}(x) e_{d2−1}(y).
    pub fn e_second_last<S: Scalar>(
        x: &SymmetricFunctionTable<S>,
        y: &SymmetricFunctionTable<S>,
    ) -> S {
        let (d1, d2) = (x.rank(), y.rank());
        if d1 == 0 || d2 == 0 {
            return S::zero();
        }
        pow(&e(x, d1), d2 - 1) * pow(&e(y, d2), d1 - 1) * e(x, d1 - 1) * e(y, d2 - 1)
    }

    /// e_N(x⊗y) = e_{d1}(x)^{d2} e_{d2}(y)^{d1}.
    pub fn e_last<S: Scalar>(x: &SymmetricFunctionTable<S>, y: &SymmetricFunctionTable<S>) -> S {
        let (d1, d2) = (x.rank(), y.rank());
        pow(&e(x, d1), d2) * pow(&e(y, d2), d1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn v(entries: &[(i64, i64)]) -> SchmidtVector<Rational> {
        SchmidtVector::new(entries.iter().map(|&(n, d)| r(n, d)).collect(), false).unwrap()
    }

    /// e_k by summing over all k-subsets.
    fn e_brute(x: &[Rational], k: usize) -> Rational {
        let n = x.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .fold(r(1, 1), |acc, i| acc * &x[i])
            })
            .fold(r(0, 1), |a, b| a + b)
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_all(&v(&[(1, 2), (1, 2)])).elementary, vec![r(1, 1), r(1, 1), r(1, 4)]);
        let third = v(&[(1, 2), (1, 3), (1, 6)]);
        let t = elementary_all(&third);
        assert_eq!(t.elementary, vec![r(1, 1), r(1, 1), r(11, 36), r(1, 36)]);
        for k in 0..=3 {
            assert_eq!(t.e(k), e_brute(third.entries(), k));
        }
        let uni = SchmidtVector::<Rational>::uniform(3);
        assert_eq!(elementary_all(&uni).e(2), r(1, 3));
        assert_eq!(uniform_elementary::<Rational>(3, 2), r(1, 3));
        assert_eq!(uniform_elementary::<Rational>(6, 6), r(1, 46656));
    }

    #[test]
    fn beyond_rank_vanishes() {
        let t = elementary_all(&v(&[(1, 2), (1, 2), (0, 1)]));
        assert_eq!(t.e(3), r(0, 1));
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&v(&[(1, 2), (1, 2)]), 2), vec![r(1, 1), r(1, 2)]);
        assert_eq!(power_sums(&v(&[(1, 2), (1, 3), (1, 6)]), 2), vec![r(1, 1), r(7, 18)]);
        assert_eq!(power_sums(&v(&[(1, 1), (0, 1)]), 5), vec![r(1, 1); 5]);
    }

    #[test]
    fn newton_examples() {
        let e = e_from_p(&[r(1, 1), r(1, 2)], 2).unwrap();
        assert_eq!(e[2], r(1, 4));
        let e = e_from_p(&vec![r(1, 1); 6], 6).unwrap();
        assert!(e[2..].iter().all(|x| *x == r(0, 1)));
        let third = v(&[(1, 2), (1, 3), (1, 6)]);
        let e = e_from_p(&power_sums(&third, 3), 3).unwrap();
        assert_eq!(e[3], r(1, 36));
        assert!(matches!(e_from_p(&[r(1, 1)], 2), Err(Error::IndexOutOfRange { .. })));

        assert_eq!(p_from_e(&[r(1, 1), r(1, 1), r(1, 4)], 2)[1], r(1, 2));
        let cubes = r(1, 8) + r(1, 27) + r(1, 216);
        let p = p_from_e(&elementary_all(&third).elementary, 3);
        assert_eq!(p[2], cubes);
        assert_eq!(p[2], r(1, 6));
    }

    #[test]
    fn closed_forms_for_low_orders() {
        // p in terms of e, and e in terms of p, for k ≤ 4
        let x = [r(2, 7), r(1, 5), r(3, 11), r(1, 9)];
        let e = elementary_of(&x);
        let p = power_sums_of(&x, 4);
        let (e1, e2, e3, e4) = (&e[1], &e[2], &e[3], &e[4]);
        let three = r(3, 1);
        let four = r(4, 1);
        assert_eq!(p[1], e1 * e1 - r(2, 1) * e2);
        assert_eq!(p[2], e1 * e1 * e1 - &three * e1 * e2 + &three * e3);
        assert_eq!(
            p[3],
            e1.pow(4) - &four * e1 * e1 * e2 + r(2, 1) * e2 * e2 + &four * e1 * e3 - &four * e4
        );
        let (p1, p2, p3, p4) = (&p[0], &p[1], &p[2], &p[3]);
        assert_eq!(*e2, (p1 * p1 - p2) / r(2, 1));
        assert_eq!(*e3, (p1.pow(3) - &three * p1 * p2 + r(2, 1) * p3) / r(6, 1));
        assert_eq!(
            *e4,
            (p1.pow(4) - r(6, 1) * p1 * p1 * p2 + &three * p2 * p2 + r(8, 1) * p1 * p3
                - r(6, 1) * p4)
                / r(24, 1)
        );
    }

    #[test]
    fn tensor_examples() {
        let half = elementary_all(&v(&[(1, 2), (1, 2)]));
        assert_eq!(e_tensor(&half, &half, 2).unwrap(), r(3, 8));
        assert_eq!(e_tensor(&half, &half, 4).unwrap(), r(1, 256));
        assert_eq!(e_tensor(&half, &half, 1).unwrap(), r(1, 1));
        assert!(matches!(e_tensor(&half, &half, 5), Err(Error::IndexOutOfRange { .. })));
        let x = v(&[(1, 2), (1, 3), (1, 6)]);
        let tx = elementary_all(&x);
        let z = x.tensor(&v(&[(1, 2), (1, 2)]));
        assert_eq!(elementary_tensor_all(&tx, &half), elementary_all(&z).elementary);
        // the e_3 expansion with coefficient 3 on the mixed terms
        assert_eq!(expanded::e3(&tx, &half), r(1, 12));
        assert_eq!(elementary_all(&z).e(3), r(1, 12));
    }

    #[test]
    fn stored_power_sums_are_reused() {
        let x = v(&[(1, 2), (1, 3), (1, 6)]);
        let t = elementary_all(&x).with_power_sums(&x, 9);
        let plain = elementary_all(&x);
        assert_eq!(t.power_sums_up_to(9), plain.power_sums_up_to(9));
        assert_eq!(e_tensor(&t, &t, 7).unwrap(), e_tensor(&plain, &plain, 7).unwrap());
    }

    #[test]
    fn reciprocal_examples() {
        let x = v(&[(1, 2), (1, 3), (1, 6)]);
        assert_eq!(e_reciprocal(&x, 1).unwrap(), r(11, 1));
        assert_eq!(e_reciprocal(&x, 0).unwrap(), r(1, 1));
        assert_eq!(e_reciprocal(&v(&[(1, 2), (1, 2)]), 2).unwrap(), r(4, 1));
        assert!(matches!(
            e_reciprocal(&v(&[(1, 1), (0, 1)]), 1),
            Err(Error::ZeroEntry { rank: 1, dim: 2 })
        ));
        assert!(matches!(e_reciprocal(&x, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn brute_force_matches_recurrence_up_to_six() {
        let x = [r(1, 3), r(1, 5), r(1, 7), r(1, 11), r(1, 13), r(2, 17)];
        let e = elementary_of(&x);
        for (k, ek) in e.iter().enumerate() {
            assert_eq!(*ek, e_brute(&x, k));
        }
    }
}
