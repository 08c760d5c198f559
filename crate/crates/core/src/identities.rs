//! Self-test suite for the symmetric-function identities, run in exact
//! arithmetic on random or user-supplied vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::{Rational, Scalar};
use crate::schmidt::SchmidtVector;
use crate::symfun::{
    e_from_p, e_reciprocal, elementary_all, elementary_of, elementary_tensor_all, expanded,
    p_from_e, power_sums,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityConfig {
    pub cases: usize,
    pub max_dim: usize,
    pub seed: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig { cases: 100, max_dim: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub case: usize,
    pub identity: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub cases: usize,
    pub checks_run: usize,
    pub failures: Vec<IdentityFailure>,
    pub all_passed: bool,
}

/// A normalized exact vector of length 1..=max_dim with small integer weights.
/// With `allow_zero`, entries may vanish (but never all of them).
pub fn random_exact_vector<R: Rng>(rng: &mut R, max_dim: usize, allow_zero: bool) -> SchmidtVector<Rational> {
    let dim = rng.random_range(1..=max_dim.max(1));
    loop {
        let lo = if allow_zero { 0 } else { 1 };
        let w: Vec<Rational> = (0..dim)
            .map(|_| Rational::from_ratio(rng.random_range(lo..=24), 1))
            .collect();
        if let Ok(v) = SchmidtVector::new(w, true) {
            return v;
        }
    }
}

struct Checker {
    case: usize,
    checks: usize,
    failures: Vec<IdentityFailure>,
}

impl Checker {
    fn check(&mut self, identity: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(IdentityFailure { case: self.case, identity, detail: detail() });
        }
    }
}

fn check_pair(case: usize, x: &SchmidtVector<Rational>, y: &SchmidtVector<Rational>) -> Checker {
    let mut c = Checker { case, checks: 0, failures: Vec::new() };
    let tx = elementary_all(x);
    let ty = elementary_all(y);

    for (name, v, t) in [("x", x, &tx), ("y", y, &ty)] {
        let d = v.dim();
        let p = power_sums(v, d);
        let e_back = e_from_p(&p, d).expect("d power sums");
        c.check("newton_p_to_e", e_back == t.elementary, || {
            format!("{name}: e from p differs from direct e")
        });
        let l = 2 * d + 1;
        c.check("newton_e_to_p", p_from_e(&t.elementary, l) == power_sums(v, l), || {
            format!("{name}: p from e differs from direct p")
        });
    }

    let product = x.tensor(y);
    let brute = elementary_of(product.entries());
    let via_p = elementary_tensor_all(&tx, &ty);
    c.check("tensor_power_sums", via_p == brute, || {
        "power-sum route differs from the materialized product".into()
    });

    let at = |k: usize| brute.get(k).cloned().unwrap_or_else(|| Rational::from_ratio(0, 1));
    let n = x.rank() * y.rank();
    let lines = [
        ("tensor_e1", 1, expanded::e1(&tx, &ty)),
        ("tensor_e2", 2, expanded::e2(&tx, &ty)),
        ("tensor_e3", 3, expanded::e3(&tx, &ty)),
        ("tensor_e_last", n, expanded::e_last(&tx, &ty)),
    ];
    for (name, k, value) in lines {
        let expected = at(k);
        c.check(name, value == expected, || format!("k={k}: {value} vs {expected}"));
    }
    if n >= 1 {
        let value = expanded::e_second_last(&tx, &ty);
        let expected = at(n - 1);
        c.check("tensor_e_second_last", value == expected, || {
            format!("k={}: {value} vs {expected}", n - 1)
        });
    }

    for (name, v) in [("x", x), ("y", y)] {
        if !v.is_full_rank() {
            continue;
        }
        let inv: Vec<Rational> = v.entries().iter().map(|a| a.recip()).collect();
        let e_inv = elementary_of(&inv);
        let ok = (0..=v.dim()).all(|k| e_reciprocal(v, k).ok().as_ref() == Some(&e_inv[k]));
        c.check("reciprocal", ok, || format!("{name}: e_k(1/x) mismatch"));
    }
    c
}

fn collect(cases: usize, results: Vec<Checker>) -> IdentityReport {
    let checks_run = results.iter().map(|c| c.checks).sum();
    let failures: Vec<_> = results.into_iter().flat_map(|c| c.failures).collect();
    IdentityReport { cases, checks_run, all_passed: failures.is_empty(), failures }
}

/// Runs every identity on `config.cases` random pairs. Case `i` is seeded
/// independently, so the report does not depend on thread scheduling.
pub fn run_random(config: &IdentityConfig) -> IdentityReport {
    let results: Vec<Checker> = (0..config.cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(i as u64));
            // every fourth case is strictly positive so the reciprocal check runs
            let allow_zero = i % 4 != 0;
            let x = random_exact_vector(&mut rng, config.max_dim, allow_zero);
            let y = random_exact_vector(&mut rng, config.max_dim, allow_zero);
            check_pair(i, &x, &y)
        })
        .collect();
    collect(config.cases, results)
}

/// Runs every identity on all ordered pairs of the given vectors (including
/// each vector with itself).
pub fn run_on_vectors(vectors: &[SchmidtVector<Rational>]) -> IdentityReport {
    let pairs: Vec<(usize, usize)> = (0..vectors.len())
        .flat_map(|i| (0..vectors.len()).map(move |j| (i, j)))
        .collect();
    let results = pairs
        .par_iter()
        .enumerate()
        .map(|(case, &(i, j))| check_pair(case, &vectors[i], &vectors[j]))
        .collect();
    collect(pairs.len(), results)
}
