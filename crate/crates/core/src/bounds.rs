//! Necessary conditions on catalysts.
//!
//! All three closed-form conditions come from requiring that the elementary
//! symmetric polynomials of ψ⊗χ dominate those of φ⊗χ, which holds for any
//! LOCC conversion because every e_k is Schur-concave. The direct margins
//! from [`ek_monotonicity_check`] are the authoritative test; the closed
//! forms are specializations that are easier to read.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monotones::{concurrence_from_table, radicand};
use crate::scalar::{cmp_tol, serde_scalar, Scalar};
use crate::schmidt::SchmidtVector;
use crate::symfun::{elementary_all, elementary_of, SymmetricFunctionTable};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogConcurrences {
    pub log2_c_dm1_psi: f64,
    pub log2_c_dm1_phi: f64,
    pub log2_c_d_psi: f64,
    pub log2_c_d_phi: f64,
}

/// Lower bound on the Schmidt rank of any catalyst, from monotonicity of
/// C_{db−1} on the tensor pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionBound {
    /// Common Schmidt rank d of ψ and φ.
    pub d: usize,
    pub raw_bound: f64,
    pub min_integer_dim: usize,
    /// True when C_{d−1}(ψ) ≥ C_{d−1}(φ); the bound is then at most 1.
    pub trivial: bool,
    pub components: LogConcurrences,
}

impl DimensionBound {
    pub fn admits(&self, catalyst_rank: usize) -> bool {
        catalyst_rank >= self.min_integer_dim
    }
}

fn common_rank<S: Scalar>(psi: &SchmidtVector<S>, phi: &SchmidtVector<S>) -> Result<usize> {
    if psi.rank() != phi.rank() {
        return Err(Error::RankMismatch { psi: psi.rank(), phi: phi.rank() });
    }
    Ok(psi.rank())
}

/// b ≥ 1 + ((d−1)/d)·(log C_{d−1}(φ) − log C_{d−1}(ψ)) / (log C_d(ψ) − log C_d(φ)).
///
/// The normalizations e_k(ι_d) cancel, so the ratio is formed as
/// ln(e_{d−1}(φ)/e_{d−1}(ψ)) / ln(e_d(ψ)/e_d(φ)) with both quotients taken
/// in the input's scalar mode.
pub fn dimension_lower_bound<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
) -> Result<DimensionBound> {
    let d = common_rank(psi, phi)?;
    if d < 2 {
        return Err(Error::RankTooSmall { rank: d, needed: 2 });
    }
    let tp = elementary_all(&psi.support());
    let tf = elementary_all(&phi.support());
    let tol = S::default_tolerance();

    let last_ratio = tp.e(d) / tf.e(d);
    let ln_last = last_ratio.ln();
    match cmp_tol(&last_ratio, &S::one(), &tol) {
        Ordering::Equal => return Err(Error::DegenerateDenominator),
        Ordering::Less => return Err(Error::NotApplicable),
        Ordering::Greater if ln_last <= 0.0 => return Err(Error::DegenerateDenominator),
        Ordering::Greater => {}
    }
    let ln_second = (tf.e(d - 1) / tp.e(d - 1)).ln();
    let raw_bound = 1.0 + ln_second / ln_last;
    let trivial = cmp_tol(&tp.e(d - 1), &tf.e(d - 1), &tol) != Ordering::Less;
    let min_integer_dim = if trivial { 1 } else { (raw_bound.ceil() as usize).max(1) };

    let c = |t: &SymmetricFunctionTable<S>, k| concurrence_from_table(t, d, k).log2();
    Ok(DimensionBound {
        d,
        raw_bound,
        min_integer_dim,
        trivial,
        components: LogConcurrences {
            log2_c_dm1_psi: if d > 2 { c(&tp, d - 1) } else { 0.0 },
            log2_c_dm1_phi: if d > 2 { c(&tf, d - 1) } else { 0.0 },
            log2_c_d_psi: c(&tp, d),
            log2_c_d_phi: c(&tf, d),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop3Status {
    /// a > 0: every catalyst satisfies r(χ) ≥ threshold.
    Constraint,
    /// a = 0 and b ≥ 0.
    NoConstraint,
    /// a = 0 and b < 0: no catalyst can exist.
    InfeasibleSignal,
    /// a < 0: e_2 would have to increase, so no catalyst can exist.
    NotFeasible,
}

/// The e_2/e_3 ratio condition r(χ) ≥ −b/a.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Prop3Report<S: Scalar> {
    /// e_2(σψ) − e_2(σφ).
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub a: S,
    /// e_3(σψ) − e_3(σφ).
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub b: S,
    /// −b/a when a > 0.
    #[serde(serialize_with = "serde_scalar::option")]
    pub threshold: Option<S>,
    pub nontrivial: bool,
    pub status: Prop3Status,
}

impl<S: Scalar> Prop3Report<S> {
    /// Whether a candidate χ meets the condition, in the undivided form
    /// a·(e_2 − 2e_3) + b·(1 − 2e_2 + 3e_3) ≥ 0 so that a ≤ 0 needs no case split.
    pub fn holds_for(&self, chi: &SchmidtVector<S>) -> bool {
        let (num, den) = r_parts(chi);
        let lhs = self.a.clone() * num + self.b.clone() * den;
        cmp_tol(&lhs, &S::zero(), &S::default_tolerance()) != Ordering::Less
    }
}

pub fn prop3_threshold<S: Scalar>(psi: &SchmidtVector<S>, phi: &SchmidtVector<S>) -> Prop3Report<S> {
    let ep = elementary_all(psi);
    let ef = elementary_all(phi);
    let a = ep.e(2) - ef.e(2);
    let b = ep.e(3) - ef.e(3);
    let tol = S::default_tolerance();
    let (status, threshold) = match cmp_tol(&a, &S::zero(), &tol) {
        Ordering::Greater => (Prop3Status::Constraint, Some(-(b.clone() / a.clone()))),
        Ordering::Less => (Prop3Status::NotFeasible, None),
        Ordering::Equal if cmp_tol(&b, &S::zero(), &tol) == Ordering::Less => {
            (Prop3Status::InfeasibleSignal, None)
        }
        Ordering::Equal => (Prop3Status::NoConstraint, None),
    };
    let nontrivial = cmp_tol(&b, &S::zero(), &tol) == Ordering::Less;
    Prop3Report { a, b, threshold, nontrivial, status }
}

fn r_parts<S: Scalar>(chi: &SchmidtVector<S>) -> (S, S) {
    let t = elementary_all(chi);
    let (two, three) = (S::from_usize(2), S::from_usize(3));
    let num = t.e(2) - two.clone() * t.e(3);
    let den = S::one() - two * t.e(2) + three * t.e(3);
    (num, den)
}

/// r(χ) = (e_2 − 2e_3) / (1 − 2e_2 + 3e_3).
pub fn r_of_chi<S: Scalar>(chi: &SchmidtVector<S>) -> Result<S> {
    let (num, den) = r_parts(chi);
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

/// Closed-form condition at k = db − 2 for a hypothesized catalyst rank b:
/// (C_{b−1}(χ)/C_{b−2}(χ))^{d−2} ≥ ((b−1)/b)·(C_{d−2}(φ)/C_{d−2}(ψ))^{d−1}·(C_d(ψ)/C_d(φ))^d·Λ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop2Report {
    pub b_assumed: usize,
    pub d: usize,
    /// The left-hand side as a formula in χ's concurrences.
    pub lhs_exponent_base: String,
    pub lhs_exponent: usize,
    pub rhs_value: f64,
    #[serde(rename = "Lambda")]
    pub lambda: f64,
    pub rho_1d_psi: f64,
    pub rho_1d_phi: f64,
    pub rho_2d_psi: f64,
    pub rho_2d_phi: f64,
    /// Smallest C_{b−1}(χ)/C_{b−2}(χ) allowed, when the right-hand side is positive.
    pub min_concurrence_ratio: Option<f64>,
    /// For b = 3 the ratio is C_2(χ) itself (C_1 ≡ 1).
    pub min_c2_chi: Option<f64>,
}

/// Evaluates the k = db − 2 closed form. Each concurrence is normalized by
/// its own state's dimension.
pub fn prop2_bound<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    b: usize,
) -> Result<Prop2Report> {
    let d = common_rank(psi, phi)?;
    if d < 3 {
        return Err(Error::RankTooSmall { rank: d, needed: 3 });
    }
    if b < 3 {
        return Err(Error::RankTooSmall { rank: b, needed: 3 });
    }
    let tp = elementary_all(&psi.support());
    let tf = elementary_all(&phi.support());
    // ρ_{k,d} = C_{d−k}^{d−k} / C_d^d, a ratio of radicands
    let rho = |t: &SymmetricFunctionTable<S>, k: usize| radicand(t, d, d - k) / radicand(t, d, d);
    let (r1p, r1f, r2p, r2f) = (rho(&tp, 1), rho(&tf, 1), rho(&tp, 2), rho(&tf, 2));
    let bd = S::from_usize(b * d);
    let lambda = (r2p.clone() - r2f.clone()) / bd
        - S::from_ratio(d as i64, d as i64 - 1) * (r1p.clone() * r1p.clone() - r1f.clone() * r1f.clone());

    let ln_ratio_dm2 = (radicand(&tf, d, d - 2) / radicand(&tp, d, d - 2)).ln();
    let ln_ratio_d = (radicand(&tp, d, d) / radicand(&tf, d, d)).ln();
    // (C_{d−2}(φ)/C_{d−2}(ψ))^{d−1} · (C_d(ψ)/C_d(φ))^d
    let scale = ((d - 1) as f64 / (d - 2) as f64 * ln_ratio_dm2 + ln_ratio_d).exp();
    let rhs_value = (b - 1) as f64 / b as f64 * scale * lambda.to_f64();

    let lhs_exponent = d - 2;
    let min_concurrence_ratio = (rhs_value > 0.0).then(|| rhs_value.powf(1.0 / lhs_exponent as f64));
    Ok(Prop2Report {
        b_assumed: b,
        d,
        lhs_exponent_base: format!("(C_{}(chi)/C_{}(chi))^{}", b - 1, b - 2, lhs_exponent),
        lhs_exponent,
        rhs_value,
        lambda: lambda.to_f64(),
        rho_1d_psi: r1p.to_f64(),
        rho_1d_phi: r1f.to_f64(),
        rho_2d_psi: r2p.to_f64(),
        rho_2d_phi: r2f.to_f64(),
        min_concurrence_ratio,
        min_c2_chi: if b == 3 { min_concurrence_ratio } else { None },
    })
}

/// The closed form at k = db − 2 evaluated on a concrete candidate, next
/// to the direct margin at the same k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prop2Check {
    pub report: Prop2Report,
    pub lhs_value: f64,
    pub closed_form_holds: bool,
    pub direct_k: usize,
    pub direct_margin_sign: i8,
    pub direct_holds: bool,
    /// The two disagree; the direct margin is authoritative.
    pub discrepancy: bool,
}

pub fn prop2_check<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    chi: &SchmidtVector<S>,
) -> Result<Prop2Check> {
    let b = chi.rank();
    let report = prop2_bound(psi, phi, b)?;
    let tc = elementary_all(&chi.support());
    let c = |k: usize| -> f64 {
        if k == 1 {
            1.0
        } else {
            concurrence_from_table(&tc, b, k).value
        }
    };
    let lhs_value = (c(b - 1) / c(b - 2)).powi(report.lhs_exponent as i32);
    let closed_form_holds = lhs_value >= report.rhs_value;

    let direct_k = report.d * b - 2;
    let margins = ek_monotonicity_check(psi, phi, chi);
    let m = &margins
        .iter()
        .find(|m| m.k == direct_k)
        .expect("k = db − 2 lies in the checked range")
        .margin;
    let direct_margin_sign = match cmp_tol(m, &S::zero(), &S::default_tolerance()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    let direct_holds = direct_margin_sign >= 0;
    Ok(Prop2Check {
        report,
        lhs_value,
        closed_form_holds,
        direct_k,
        direct_margin_sign,
        direct_holds,
        discrepancy: closed_form_holds != direct_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct EkMargin<S: Scalar> {
    pub k: usize,
    /// e_k(σ(ψ⊗χ)) − e_k(σ(φ⊗χ)).
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub margin: S,
}

/// Margins e_k(ψ⊗χ) − e_k(φ⊗χ) for k = 2..=rank(ψ)·rank(χ). Any negative
/// margin rules χ out as a catalyst.
///
/// Uses the product recurrence on the materialized products. The power-sum
/// route avoids forming them, but in exact mode its intermediates grow much
/// larger and it measured about 3x slower; in float mode Newton's
/// identities also cancel badly.
pub fn ek_monotonicity_check<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    chi: &SchmidtVector<S>,
) -> Vec<EkMargin<S>> {
    let k_max = psi.rank() * chi.rank();
    let lhs = elementary_of(psi.tensor(chi).entries());
    let rhs = elementary_of(phi.tensor(chi).entries());
    let at = |v: &[S], k: usize| v.get(k).cloned().unwrap_or_else(S::zero);
    (2..=k_max)
        .map(|k| EkMargin { k, margin: at(&lhs, k) - at(&rhs, k) })
        .collect()
}

/// Whether every margin is non-negative (within tolerance).
pub fn margins_nonnegative<S: Scalar>(margins: &[EkMargin<S>]) -> bool {
    let tol = S::default_tolerance();
    margins.iter().all(|m| cmp_tol(&m.margin, &S::zero(), &tol) != Ordering::Less)
}
