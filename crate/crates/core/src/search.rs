//! Catalyst search with exact certification.
//!
//! Candidates are found by multi-start Nelder–Mead over the ordered
//! probability simplex, then rationalized by continued fractions and
//! accepted only after an exact majorization check of the tensor pair.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::dimension_lower_bound;
use crate::error::{Error, Result};
use crate::monotones::{elocc_feasible, GridConfig, Verdict};
use crate::scalar::{rational_from_f64, serde_scalar, Rational, Scalar};
use crate::schmidt::{majorization_check, MajorizationReport, SchmidtVector};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub catalyst_dim: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Float objective at or below which a candidate is rationalized.
    pub shrink_tolerance: f64,
    pub max_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            catalyst_dim: 3,
            restarts: 64,
            max_iterations: 5000,
            seed: 0,
            shrink_tolerance: 1e-12,
            max_denominator: 1_000_000,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.catalyst_dim < 2 {
            return Err(Error::Invalid("catalyst dimension must be at least 2".into()));
        }
        if self.restarts == 0 || self.max_iterations == 0 || self.max_denominator == 0 {
            return Err(Error::Invalid("restarts, iterations and denominators must be positive".into()));
        }
        if self.shrink_tolerance.is_nan() || self.shrink_tolerance < 0.0 {
            return Err(Error::Invalid("shrink tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// An exactly verified catalyst (or a rejected candidate, with the evidence).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalystCertificate {
    pub chi: SchmidtVector<Rational>,
    /// max over k < N of the partial-sum excess of ψ⊗χ over φ⊗χ.
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub objective: Rational,
    pub verified_exact: bool,
    pub report: MajorizationReport<Rational>,
}

/// max_k [top-k sum of σ(ψ⊗χ) − top-k sum of σ(φ⊗χ)] over k < N; ≤ 0 iff
/// χ catalyzes ψ → φ.
pub fn violation<S: Scalar>(psi: &SchmidtVector<S>, phi: &SchmidtVector<S>, chi: &SchmidtVector<S>) -> S {
    -majorization_check(&psi.tensor(chi), &phi.tensor(chi)).margin
}

/// Exact check of ψ⊗χ ≺ φ⊗χ. All three vectors must be exact.
pub fn verify_catalyst<S: Scalar>(
    psi: &SchmidtVector<S>,
    phi: &SchmidtVector<S>,
    chi: &SchmidtVector<S>,
) -> Result<CatalystCertificate> {
    let psi = psi.to_exact().ok_or(Error::InexactInput("psi"))?;
    let phi = phi.to_exact().ok_or(Error::InexactInput("phi"))?;
    let chi = chi.to_exact().ok_or(Error::InexactInput("chi"))?;
    Ok(certify(&psi, &phi, chi))
}

fn certify(
    psi: &SchmidtVector<Rational>,
    phi: &SchmidtVector<Rational>,
    chi: SchmidtVector<Rational>,
) -> CatalystCertificate {
    let report = majorization_check(&psi.tensor(&chi), &phi.tensor(&chi));
    CatalystCertificate {
        objective: -report.margin.clone(),
        verified_exact: report.majorizes,
        report,
        chi,
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued-fraction convergents and the last semiconvergent.
pub fn limit_denominator(x: f64, max_den: u64) -> Option<Rational> {
    let exact = rational_from_f64(x)?;
    let max = BigInt::from(max_den.max(1));
    if *exact.denom() <= max {
        return Some(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::from(1), BigInt::from(1), BigInt::zero());
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let rem = &n - &a * &d;
        (n, d) = (d, rem);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    let closer = if (&conv - &exact).abs() <= (&semi - &exact).abs() { conv } else { semi };
    Some(closer)
}

/// Rationalizes a float probability vector entrywise and renormalizes exactly.
pub fn rationalize(chi: &[f64], max_den: u64) -> Option<SchmidtVector<Rational>> {
    let q = chi
        .iter()
        .map(|&x| limit_denominator(x.max(0.0), max_den))
        .collect::<Option<Vec<_>>>()?;
    SchmidtVector::new(q, true).ok()
}

/// Maps unconstrained parameters to a descending probability vector:
/// w = softmax(z, 0) and χ_i = Σ_{j ≥ i} w_j / j. Every ordered probability
/// vector is reachable, with w_j = j(χ_j − χ_{j+1}).
fn ordered_simplex(z: &[f64]) -> Vec<f64> {
    let b = z.len() + 1;
    let m = z.iter().copied().fold(0.0f64, f64::max);
    let mut w: Vec<f64> = z.iter().map(|x| (x - m).exp()).collect();
    w.push((-m).exp());
    let total: f64 = w.iter().sum();
    let mut chi = vec![0.0; b];
    let mut acc = 0.0;
    for j in (0..b).rev() {
        acc += w[j] / total / (j + 1) as f64;
        chi[j] = acc;
    }
    chi
}

fn float_violation(psi: &[f64], phi: &[f64], chi: &[f64], scratch: &mut (Vec<f64>, Vec<f64>)) -> f64 {
    let (a, b) = scratch;
    a.clear();
    b.clear();
    a.extend(psi.iter().flat_map(|x| chi.iter().map(move |y| x * y)));
    b.extend(phi.iter().flat_map(|x| chi.iter().map(move |y| x * y)));
    let n = a.len().max(b.len());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    let (mut sa, mut sb) = (0.0, 0.0);
    let mut worst = if n > 1 { f64::NEG_INFINITY } else { 0.0 };
    for k in 0..n.saturating_sub(1) {
        sa += a[k];
        sb += b[k];
        worst = worst.max(sa - sb);
    }
    worst
}

/// Adaptive-parameter Nelder–Mead (Gao & Han coefficients).
fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: Vec<f64>, step: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 1.0 / (2.0 * nf), 1.0 - 1.0 / nf);
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    let fx0 = f(&x0);
    simplex.push((fx0, x0.clone()));
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += step;
        simplex.push((f(&x), x));
    }
    let combine = |c: &[f64], x: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(x).map(|(ci, xi)| ci + t * (xi - ci)).collect()
    };
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let spread = simplex[n].0 - simplex[0].0;
        let size = simplex[1..]
            .iter()
            .flat_map(|(_, x)| x.iter().zip(&simplex[0].1).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= 1e-15 && size <= 1e-10 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(_, x)| x[i]).sum::<f64>() / nf)
            .collect();
        let worst = simplex[n].1.clone();
        let xr = combine(&centroid, &worst, -alpha);
        let fr = f(&xr);
        if fr < simplex[0].0 {
            let xe = combine(&centroid, &worst, -alpha * beta);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[n - 1].0 {
            simplex[n] = (fr, xr);
        } else {
            let outside = fr < simplex[n].0;
            let xc = if outside {
                combine(&centroid, &xr, gamma)
            } else {
                combine(&centroid, &worst, gamma)
            };
            let fc = f(&xc);
            if (outside && fc <= fr) || (!outside && fc < simplex[n].0) {
                simplex[n] = (fc, xc);
            } else {
                let best = simplex[0].1.clone();
                for (fv, x) in simplex[1..].iter_mut() {
                    *x = combine(&best, x, delta);
                    *fv = f(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (fx, x) = simplex.swap_remove(0);
    (x, fx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartResult {
    pub restart: usize,
    pub objective: f64,
    pub chi: Vec<f64>,
}

fn run_restart(psi: &[f64], phi: &[f64], cfg: &SearchConfig, restart: usize) -> RestartResult {
    let stream = cfg.seed ^ (restart as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let x0: Vec<f64> = (0..cfg.catalyst_dim - 1).map(|_| rng.random_range(-4.0..4.0)).collect();
    let mut scratch = (Vec::new(), Vec::new());
    let (z, objective) = nelder_mead(
        |z| float_violation(psi, phi, &ordered_simplex(z), &mut scratch),
        x0,
        1.0,
        cfg.max_iterations,
    );
    RestartResult { restart, objective, chi: ordered_simplex(&z) }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub certificate: Option<CatalystCertificate>,
    /// Restart that produced the certificate; `None` for the uniform shortcut.
    pub certificate_restart: Option<usize>,
    pub best_residual: f64,
    pub best_candidate: Vec<f64>,
    pub restarts_run: usize,
    pub rationalizations_tried: usize,
    pub elocc_verdict: Verdict,
    pub elocc_min_margin: f64,
    pub dimension_bound: Option<f64>,
    pub min_catalyst_dim: Option<usize>,
    pub warnings: Vec<String>,
}

/// Searches for a catalyst of dimension `config.catalyst_dim`.
///
/// `None` in the outcome's certificate means "not found", never "does not exist".
pub fn search_catalyst(
    psi: &SchmidtVector<Rational>,
    phi: &SchmidtVector<Rational>,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    config.validate()?;
    let b = config.catalyst_dim;
    let mut warnings = Vec::new();

    let feas = elocc_feasible(psi, phi, &GridConfig::default())?;
    if feas.elocc_verdict != Verdict::Feasible {
        warnings.push(format!(
            "Renyi entropy test is {:?} (min margin {:.3e}); a catalyst may not exist",
            feas.elocc_verdict, feas.min_margin
        ));
    }
    let bound = dimension_lower_bound(psi, phi).ok();
    if let Some(db) = bound.as_ref().filter(|db| !db.admits(b)) {
        warnings.push(format!(
            "catalyst dimension {b} is below the concurrence lower bound {} (raw {:.4}); no catalyst of this dimension exists",
            db.min_integer_dim, db.raw_bound
        ));
    }
    let mut outcome = SearchOutcome {
        certificate: None,
        certificate_restart: None,
        best_residual: f64::INFINITY,
        best_candidate: Vec::new(),
        restarts_run: 0,
        rationalizations_tried: 0,
        elocc_verdict: feas.elocc_verdict,
        elocc_min_margin: feas.min_margin,
        dimension_bound: bound.as_ref().map(|d| d.raw_bound),
        min_catalyst_dim: bound.as_ref().map(|d| d.min_integer_dim),
        warnings,
    };

    // ψ⊗u ≺ φ⊗u iff ψ ≺ φ, so the uniform catalyst settles the LOCC case
    let uniform = certify(psi, phi, SchmidtVector::uniform(b));
    if uniform.verified_exact {
        outcome.best_residual = Scalar::to_f64(&uniform.objective);
        outcome.best_candidate = uniform.chi.to_f64().entries().to_vec();
        outcome.certificate = Some(uniform);
        return Ok(outcome);
    }

    let pf: Vec<f64> = psi.entries().iter().map(Scalar::to_f64).collect();
    let ff: Vec<f64> = phi.entries().iter().map(Scalar::to_f64).collect();
    let mut results: Vec<RestartResult> = (0..config.restarts)
        .into_par_iter()
        .map(|i| run_restart(&pf, &ff, config, i))
        .collect();
    results.sort_by(|a, b| a.objective.total_cmp(&b.objective).then(a.restart.cmp(&b.restart)));
    outcome.restarts_run = results.len();
    if let Some(best) = results.first() {
        outcome.best_residual = best.objective;
        outcome.best_candidate = best.chi.clone();
    }

    let mut denominators = Vec::new();
    let mut den = 10u64;
    while den < config.max_denominator {
        denominators.push(den);
        den = den.saturating_mul(10);
    }
    denominators.push(config.max_denominator);

    for cand in results.iter().filter(|r| r.objective <= config.shrink_tolerance) {
        let mut last: Option<SchmidtVector<Rational>> = None;
        for &den in &denominators {
            let Some(q) = rationalize(&cand.chi, den) else { continue };
            if q.rank() < 1 || last.as_ref() == Some(&q) {
                continue;
            }
            outcome.rationalizations_tried += 1;
            let cert = certify(psi, phi, q.clone());
            if cert.verified_exact {
                outcome.certificate = Some(cert);
                outcome.certificate_restart = Some(cand.restart);
                return Ok(outcome);
            }
            last = Some(q);
        }
    }
    Ok(outcome)
}

/// Orders restart results the way [`search_catalyst`] merges them.
pub fn merge_order(a: &RestartResult, b: &RestartResult) -> Ordering {
    a.objective.total_cmp(&b.objective).then(a.restart.cmp(&b.restart))
}
