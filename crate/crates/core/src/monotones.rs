//! Concurrence monotones, Rényi entropies and the catalytic feasibility test.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{binomial, pow, serde_scalar, Scalar};
use crate::schmidt::{majorization_check, MajorizationReport, SchmidtVector};
use crate::symfun::{elementary_all, SymmetricFunctionTable};

/// C_k of one state. The radicand e_k/e_k(ι_n) is kept in the scalar mode
/// of the input; the k-th root is taken in floating point.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Concurrence<S: Scalar> {
    pub k: usize,
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub radicand: S,
    pub value: f64,
}

impl<S: Scalar> Concurrence<S> {
    /// log2 C_k.
    pub fn log2(&self) -> f64 {
        self.radicand.ln() / (self.k as f64 * std::f64::consts::LN_2)
    }
}

/// e_k·n^k / C(n,k), i.e. C_k^k, for 1 ≤ k ≤ n.
pub(crate) fn radicand<S: Scalar>(table: &SymmetricFunctionTable<S>, n: usize, k: usize) -> S {
    table.e(k) * pow(&S::from_usize(n), k) / S::from_bigint(&binomial(n, k))
}

pub(crate) fn concurrence_from_table<S: Scalar>(
    table: &SymmetricFunctionTable<S>,
    n: usize,
    k: usize,
) -> Concurrence<S> {
    let radicand = radicand(table, n, k);
    let value = if radicand.is_zero() {
        0.0
    } else {
        (radicand.ln() / k as f64).exp()
    };
    Concurrence { k, radicand, value }
}

/// C_k(ζ) = (e_k(σ(ζ)) / e_k(ι_n))^{1/k} with n = dim(ζ).
pub fn concurrence<S: Scalar>(zeta: &SchmidtVector<S>, k: usize) -> Result<Concurrence<S>> {
    let n = zeta.dim();
    if k < 2 || k > n {
        return Err(Error::IndexOutOfRange { index: k, min: 2, max: n });
    }
    Ok(concurrence_from_table(&elementary_all(zeta), n, k))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct ConcurrenceProfile<S: Scalar> {
    pub dim: usize,
    /// C_2, ..., C_n.
    pub values: Vec<Concurrence<S>>,
}

impl<S: Scalar> ConcurrenceProfile<S> {
    pub fn get(&self, k: usize) -> Option<&Concurrence<S>> {
        k.checked_sub(2).and_then(|i| self.values.get(i))
    }
}

pub fn concurrence_profile<S: Scalar>(zeta: &SchmidtVector<S>) -> ConcurrenceProfile<S> {
    let n = zeta.dim();
    let table = elementary_all(zeta);
    ConcurrenceProfile {
        dim: n,
        values: (2..=n).map(|k| concurrence_from_table(&table, n, k)).collect(),
    }
}

/// Order of a Rényi entropy, including the two limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// α → 0: log of the rank.
    Zero,
    /// Finite α > 0; α = 1 is the Shannon entropy.
    Finite(f64),
    /// α → ∞: min-entropy.
    Infinity,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Zero => f.write_str("0+"),
            Order::Finite(a) => write!(f, "{a}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        match self {
            Order::Finite(a) => s.serialize_f64(*a),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Half-width of the window around α = 1 evaluated as Shannon entropy.
pub const SHANNON_WINDOW: f64 = 1e-6;

/// S_α(x) in bits.
pub fn renyi_entropy<S: Scalar>(x: &SchmidtVector<S>, order: Order) -> Result<f64> {
    let xs = positive_entries(x);
    renyi_of_positive(&xs, order)
}

fn positive_entries<S: Scalar>(x: &SchmidtVector<S>) -> Vec<f64> {
    x.entries()[..x.rank()].iter().map(Scalar::to_f64).collect()
}

fn renyi_of_positive(xs: &[f64], order: Order) -> Result<f64> {
    use std::f64::consts::LN_2;
    match order {
        Order::Zero => Ok((xs.len() as f64).log2()),
        Order::Infinity => Ok(-xs[0].log2()),
        Order::Finite(a) if !a.is_finite() || a <= 0.0 => Err(Error::InvalidOrder(a.to_string())),
        Order::Finite(a) if (a - 1.0).abs() < SHANNON_WINDOW => {
            Ok(-xs.iter().map(|x| x * x.ln()).sum::<f64>() / LN_2)
        }
        Order::Finite(a) => {
            let ln_sum = if (a - 1.0).abs() < 0.5 {
                // Σx^a = Σx + Σ x (x^{a−1} − 1), accurate as a → 1
                let total: f64 = xs.iter().sum();
                let s: f64 = xs.iter().map(|x| x * ((a - 1.0) * x.ln()).exp_m1()).sum();
                ((total - 1.0) + s).ln_1p()
            } else {
                let ln_max = xs[0].ln();
                let s: f64 = xs.iter().map(|x| (a * (x.ln() - ln_max)).exp()).sum();
                a * ln_max + s.ln()
            };
            Ok(ln_sum / ((1.0 - a) * LN_2))
        }
    }
}

/// Log-spaced grid of Rényi orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub points: usize,
    /// Absolute tolerance for the feasibility verdict.
    pub tolerance: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { alpha_min: 1e-6, alpha_max: 1e6, points: 2000, tolerance: 1e-9 }
    }
}

impl GridConfig {
    pub fn alphas(&self) -> Result<Vec<f64>> {
        if !self.alpha_min.is_finite() || !self.alpha_max.is_finite() || self.alpha_min <= 0.0 || self.alpha_max <= self.alpha_min {
            return Err(Error::Invalid(format!(
                "alpha range must satisfy 0 < min < max < inf (got {}..{})",
                self.alpha_min, self.alpha_max
            )));
        }
        if self.points < 2 {
            return Err(Error::Invalid("alpha grid needs at least 2 points".into()));
        }
        let (lo, hi) = (self.alpha_min.ln(), self.alpha_max.ln());
        let step = (hi - lo) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| (lo + step * i as f64).exp()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Feasible,
    Infeasible,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = ""))]
pub struct FeasibilityReport<S: Scalar> {
    pub locc: MajorizationReport<S>,
    pub elocc_verdict: Verdict,
    pub alpha_grid: Vec<f64>,
    /// f(α) = S_α(σψ) − S_α(σφ) on the grid.
    pub f_values: Vec<f64>,
    pub limit_alpha0: f64,
    pub limit_alpha1: f64,
    pub limit_alpha_inf: f64,
    /// lim f(α)/α as α → 0 when the ranks agree; equals log2 C_r(ψ) − log2 C_r(φ).
    pub alpha0_slope: Option<f64>,
    /// Minimum of the scaled margin f(α)/min(α, 1) over the grid and the
    /// limits; the verdict is read from this value.
    pub min_margin: f64,
    pub min_margin_alpha: Order,
    /// Minimum of the unscaled f over the grid and the limits, and where it
    /// occurs (the α → 0 limit wins ties).
    pub min_f: f64,
    pub argmin_alpha: Order,
    /// Minimum of the unscaled f over the interior grid only.
    pub min_grid_f: f64,
}

/// Samples f(α) and its limits to decide whether some catalyst can enable ψ → φ.
///
/// f vanishes linearly as α → 0 whenever the ranks agree, so the verdict is
/// taken on f(α)/min(α, 1), whose α → 0 limit is the slope at the origin.
pub fn elocc_feasible<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    grid: &GridConfig,
) -> Result<FeasibilityReport<S>> {
    let alphas = grid.alphas()?;
    let xs = positive_entries(psi);
    let ys = positive_entries(phi);
    let f = |order: Order| -> f64 {
        renyi_of_positive(&xs, order).expect("valid order")
            - renyi_of_positive(&ys, order).expect("valid order")
    };
    let f_values: Vec<f64> = alphas.par_iter().map(|&a| f(Order::Finite(a))).collect();

    let limit_alpha0 = f(Order::Zero);
    let limit_alpha1 = f(Order::Finite(1.0));
    let limit_alpha_inf = f(Order::Infinity);
    let alpha0_slope = (psi.rank() == phi.rank()).then(|| log_product_ratio(psi, phi));

    let lowest = |first: f64, rest: &mut dyn Iterator<Item = (f64, Order)>| {
        rest.fold((first, Order::Zero), |best, (m, at)| if m < best.0 { (m, at) } else { best })
    };
    let ends = [(limit_alpha1, Order::Finite(1.0)), (limit_alpha_inf, Order::Infinity)];
    let (min_margin, min_margin_alpha) = lowest(
        alpha0_slope.unwrap_or(limit_alpha0),
        &mut alphas
            .iter()
            .zip(&f_values)
            .map(|(&a, &fa)| (fa / a.min(1.0), Order::Finite(a)))
            .chain(ends),
    );
    let (min_f, argmin_alpha) = lowest(
        limit_alpha0,
        &mut alphas.iter().zip(&f_values).map(|(&a, &fa)| (fa, Order::Finite(a))).chain(ends),
    );

    let elocc_verdict = if min_margin < -grid.tolerance {
        Verdict::Infeasible
    } else if min_margin <= grid.tolerance {
        Verdict::Boundary
    } else {
        Verdict::Feasible
    };
    let min_grid_f = f_values.iter().copied().fold(f64::INFINITY, f64::min);

    Ok(FeasibilityReport {
        locc: majorization_check(psi, phi),
        elocc_verdict,
        alpha_grid: alphas,
        f_values,
        limit_alpha0,
        limit_alpha1,
        limit_alpha_inf,
        alpha0_slope,
        min_margin,
        min_margin_alpha,
        min_f,
        argmin_alpha,
        min_grid_f,
    })
}

/// (1/r)·log2(∏ψ_i / ∏φ_i) over the supports, with the ratio formed in the
/// input's scalar mode.
fn log_product_ratio<S: Scalar>(psi: &SchmidtVector<S>, phi: &SchmidtVector<S>) -> f64 {
    let r = psi.rank();
    let prod = |v: &SchmidtVector<S>| {
        v.entries()[..r].iter().fold(S::one(), |acc, x| acc * x.clone())
    };
    (prod(psi) / prod(phi)).ln() / (r as f64 * std::f64::consts::LN_2)
}
