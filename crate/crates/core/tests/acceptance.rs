//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Expected values here come from oracles written in this file (subset sums,
//! materialized products, hinge-function majorization), not from the library.

use std::time::{Duration, Instant};

use catalyze_core::fixtures::six_level_pair;
use catalyze_core::scalar::Rational;
use catalyze_core::schmidt::oracle::majorized_by_hinge;
use catalyze_core::symfun::{e_from_p, e_reciprocal, elementary_all, p_from_e, power_sums};
use catalyze_core::{
    concurrence, dimension_lower_bound, elocc_feasible, majorization_check, prop2_bound,
    prop2_check, prop3_threshold, r_of_chi, search_catalyst, GridConfig, Order, Scalar,
    SchmidtVector, SearchConfig, Verdict,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type V = SchmidtVector<Rational>;

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn from_weights(w: &[u32]) -> V {
    SchmidtVector::new(w.iter().map(|&x| r(x as i64, 1)).collect(), true).unwrap()
}

/// e_k by summing over all k-subsets of the entries.
fn e_subsets(x: &[Rational], k: usize) -> Rational {
    fn go(x: &[Rational], k: usize, acc: Rational) -> Rational {
        if k == 0 {
            return acc;
        }
        if x.len() < k {
            return Rational::zero();
        }
        go(&x[1..], k - 1, &acc * &x[0]) + go(&x[1..], k, acc)
    }
    go(x, k, Rational::one())
}

/// The entries of x⊗y, unsorted.
fn materialize(x: &V, y: &V) -> Vec<Rational> {
    x.entries().iter().flat_map(|a| y.entries().iter().map(move |b| a * b)).collect()
}

/// Descending partial sums, computed independently of the library.
fn partial_sums(v: &V) -> Vec<Rational> {
    let mut s = v.entries().to_vec();
    s.sort_by(|a, b| b.cmp(a));
    s.iter()
        .scan(Rational::zero(), |acc, x| {
            *acc += x;
            Some(acc.clone())
        })
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn weights(max_dim: usize, min: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(min..=24u32, 1..=max_dim).prop_filter("not all zero", |w| w.iter().any(|&x| x > 0))
}

fn report<T: std::fmt::Debug>(res: Result<(), TestError<T>>) -> Outcome {
    match res {
        Ok(()) => outcome(true, "ok"),
        Err(TestError::Fail(why, value)) => outcome(false, format!("{why}; minimal case {value:?}")),
        Err(TestError::Abort(why)) => outcome(false, format!("aborted: {why}")),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (psi, phi) = six_level_pair();
    let rep = majorization_check(&psi, &phi);
    let (sp, sf) = (partial_sums(&psi), partial_sums(&phi));
    // ascending form: 19/351 + 1/13 < 9/196 + 25/196, i.e. the top four of ψ exceed those of φ
    let witness = r(19, 351) + r(1, 13) < r(9, 196) + r(25, 196);
    let excess = &sp[3] - &sf[3];
    let matches = excess == (r(9, 196) + r(25, 196)) - (r(19, 351) + r(1, 13));
    let ok = !rep.majorizes
        && witness
        && matches
        && rep.first_violation_k == Some(4)
        && rep.partial_sums_lhs == sp
        && rep.partial_sums_rhs == sf
        && !majorized_by_hinge(psi.entries(), phi.entries());
    let elapsed = start.elapsed();
    outcome(
        ok && elapsed < Duration::from_secs(1),
        format!("not majorized, top-4 excess {excess}, k={:?}, {elapsed:.2?}", rep.first_violation_k),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (psi, phi) = six_level_pair();
    let rep = elocc_feasible(&psi, &phi, &GridConfig::default()).unwrap();
    let interior_positive = rep.f_values.iter().all(|&f| f > 0.0);
    let elapsed = start.elapsed();
    let ok = rep.elocc_verdict == Verdict::Feasible
        && interior_positive
        && rep.limit_alpha0 == 0.0
        && rep.argmin_alpha == Order::Zero
        && rep.min_margin > 1e-9
        && psi.rank() == 6
        && phi.rank() == 6
        && elapsed < Duration::from_secs(5);
    outcome(
        ok,
        format!(
            "{:?}, f(0+)={}, min scaled margin {:.3e}, min interior f {:.3e}, {elapsed:.2?}",
            rep.elocc_verdict, rep.limit_alpha0, rep.min_margin, rep.min_grid_f
        ),
    )
}

fn criterion_3() -> Outcome {
    let (psi, phi) = six_level_pair();
    let b = dimension_lower_bound(&psi, &phi).unwrap();
    outcome(
        (b.raw_bound - 2.7).abs() <= 0.1 && b.min_integer_dim == 3,
        format!("raw {:.4}, min dim {}", b.raw_bound, b.min_integer_dim),
    )
}

fn criterion_4() -> Outcome {
    let (psi, phi) = six_level_pair();
    let rep = prop2_bound(&psi, &phi, 3).unwrap();
    match rep.min_c2_chi {
        Some(c2) => outcome((c2 - 0.436).abs() <= 0.002, format!("C_2(chi) >= {c2:.5} (target 0.436 +- 0.002)")),
        None => outcome(false, format!("no constraint, rhs {}", rep.rhs_value)),
    }
}

fn criterion_5a() -> Outcome {
    report(runner(500).run(&weights(4, 0), |w| {
        let x = from_weights(&w);
        let d = x.dim();
        let e: Vec<Rational> = (0..=d).map(|k| e_subsets(x.entries(), k)).collect();
        let p: Vec<Rational> = (1..=2 * d)
            .map(|l| x.entries().iter().map(|a| num_traits::pow(a.clone(), l)).sum())
            .collect();
        prop_assert_eq!(&e_from_p(&p, d).unwrap(), &e);
        prop_assert_eq!(&p_from_e(&e, 2 * d), &p);
        prop_assert_eq!(&power_sums(&x, 2 * d), &p);
        prop_assert_eq!(&elementary_all(&x).elementary, &e);
        Ok(())
    }))
}

/// Claimed closed forms for e_k(x⊗y), with ranks d1, d2.
fn claimed_expansions(x: &[Rational], dx: usize, y: &[Rational], dy: usize) -> Vec<(&'static str, usize, Rational)> {
    let ex = |k: usize| e_subsets(x, k);
    let ey = |k: usize| e_subsets(y, k);
    let (x1, x2, x3, y1, y2, y3) = (ex(1), ex(2), ex(3), ey(1), ey(2), ey(3));
    let two = r(2, 1);
    let three = r(3, 1);
    let cube = |a: &Rational| a * a * a;
    let n = dx * dy;
    let mut lines = vec![
        ("e_1", 1, &x1 * &y1),
        ("e_2", 2, &x1 * &x1 * &y2 + &x2 * &y1 * &y1 - &two * &x2 * &y2),
        (
            "e_3",
            3,
            &x3 * cube(&y1) + cube(&x1) * &y3 + &x1 * &x2 * &y1 * &y2
                - &two * &x1 * &x2 * &y3
                - &two * &x3 * &y1 * &y2
                + &three * &x3 * &y3,
        ),
    ];
    if dx >= 1 && dy >= 1 {
        let last = num_traits::pow(ex(dx), dy) * num_traits::pow(ey(dy), dx);
        let second_last = num_traits::pow(ex(dx), dy - 1)
            * num_traits::pow(ey(dy), dx - 1)
            * ex(dx - 1)
            * ey(dy - 1);
        lines.push(("e_{N-1}", n - 1, second_last));
        lines.push(("e_N", n, last));
    }
    lines
}

fn criterion_5b() -> Outcome {
    let names = ["e_1", "e_2", "e_3", "e_{N-1}", "e_N"];
    let mut details = Vec::new();
    let mut pass = true;
    for (i, name) in names.iter().enumerate() {
        let res = runner(500).run(&(weights(4, 0), weights(4, 0)), |(wx, wy)| {
            let (x, y) = (from_weights(&wx), from_weights(&wy));
            let prod = materialize(&x, &y);
            let (sx, sy) = (&x.entries()[..x.rank()], &y.entries()[..y.rank()]);
            let lines = claimed_expansions(sx, x.rank(), sy, y.rank());
            let (_, k, value) = &lines[i];
            let brute = e_subsets(&prod, *k);
            if *value != brute {
                return Err(TestCaseError::fail(format!("{name}: closed form {value} vs brute force {brute}")));
            }
            Ok(())
        });
        let o = report(res);
        pass &= o.pass;
        details.push(if o.pass { format!("{name} ok") } else { o.detail });
    }
    outcome(pass, details.join("; "))
}

fn criterion_5c() -> Outcome {
    report(runner(500).run(&weights(4, 1), |w| {
        let x = from_weights(&w);
        let inv: Vec<Rational> = x.entries().iter().map(|a| a.recip()).collect();
        for k in 0..=x.dim() {
            prop_assert_eq!(e_reciprocal(&x, k).unwrap(), e_subsets(&inv, k));
        }
        Ok(())
    }))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let parts = [("a", criterion_5a()), ("b", criterion_5b()), ("c", criterion_5c())];
    let elapsed = start.elapsed();
    let pass = parts.iter().all(|(_, o)| o.pass) && elapsed < Duration::from_secs(30);
    let detail = parts
        .iter()
        .map(|(n, o)| format!("({n}) {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail))
        .collect::<Vec<_>>()
        .join(" | ");
    outcome(pass, format!("{detail} | {elapsed:.2?}"))
}

fn random_full_rank(rng: &mut ChaCha8Rng, max_dim: usize) -> V {
    let d = rng.random_range(2..=max_dim);
    from_weights(&(0..d).map(|_| rng.random_range(1..=40)).collect::<Vec<_>>())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let psi = random_full_rank(&mut rng, 5);
        let chi = random_full_rank(&mut rng, 4);
        let (d, b) = (psi.dim(), chi.dim());
        let lhs = concurrence(&psi.tensor(&chi), d * b).unwrap().value;
        let rhs = concurrence(&psi, d).unwrap().value * concurrence(&chi, b).unwrap().value;
        worst = worst.max((lhs - rhs).abs());
    }
    outcome(worst <= 1e-10, format!("100 pairs, max |difference| {worst:.2e}"))
}

/// Samples ψ, χ and a perturbed φ until ψ⊗χ ≺ φ⊗χ holds exactly while
/// ψ ≺ φ fails, so the catalyst is doing real work.
fn catalysis_instance(rng: &mut ChaCha8Rng) -> (V, V, V) {
    loop {
        let d = rng.random_range(3..=5);
        let b = rng.random_range(3..=4);
        let wp: Vec<u32> = (0..d).map(|_| rng.random_range(4..=60)).collect();
        let wf: Vec<u32> = wp.iter().map(|&w| (w as i64 + rng.random_range(-3..=3)).max(1) as u32).collect();
        let wc: Vec<u32> = (0..b).map(|_| rng.random_range(1..=30)).collect();
        let (psi, phi, chi) = (from_weights(&wp), from_weights(&wf), from_weights(&wc));
        if majorized_by_hinge(psi.entries(), phi.entries()) {
            continue;
        }
        if majorized_by_hinge(&materialize(&psi, &chi), &materialize(&phi, &chi)) {
            return (psi, phi, chi);
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut p1, mut p2, mut p3, mut rpos) = (0, 0, 0, 0);
    let mut p2_applicable = 0;
    let total = 50;
    for _ in 0..total {
        let (psi, phi, chi) = catalysis_instance(&mut rng);
        let b = chi.rank();
        if dimension_lower_bound(&psi, &phi).unwrap().raw_bound <= b as f64 + 1e-12 {
            p1 += 1;
        }
        if let Ok(check) = prop2_check(&psi, &phi, &chi) {
            p2_applicable += 1;
            if check.closed_form_holds {
                p2 += 1;
            }
        }
        if prop3_threshold(&psi, &phi).holds_for(&chi) {
            p3 += 1;
        }
        if r_of_chi(&chi).unwrap() >= Rational::zero() {
            rpos += 1;
        }
    }
    let pass = p1 == total && p2 == p2_applicable && p3 == total && rpos == total;
    outcome(
        pass,
        format!(
            "{total} instances: dimension bound {p1}/{total}, k=db-2 closed form {p2}/{p2_applicable}, e_2/e_3 ratio {p3}/{total}, r>=0 {rpos}/{total}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs: Vec<(V, V)> = Vec::new();
    let (p, f, _) = catalyze_core::fixtures::two_qubit_catalysis();
    pairs.push((p, f));
    pairs.push(six_level_pair());
    for _ in 0..4 {
        let (psi, phi, _) = catalysis_instance(&mut rng);
        pairs.push((psi, phi));
    }
    for _ in 0..4 {
        pairs.push((random_full_rank(&mut rng, 4), random_full_rank(&mut rng, 4)));
    }
    let (mut certs, mut sound, mut deterministic, mut consistent) = (0, 0, 0, 0);
    let runs = pairs.len() * 2;
    for (psi, phi) in &pairs {
        for dim in [2, 3] {
            let cfg = SearchConfig { catalyst_dim: dim, restarts: 12, max_iterations: 1500, seed: 42, ..SearchConfig::default() };
            let a = search_catalyst(psi, phi, &cfg).unwrap();
            let b = search_catalyst(psi, phi, &cfg).unwrap();
            if serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap() {
                deterministic += 1;
            }
            let Some(cert) = &a.certificate else {
                sound += 1;
                consistent += 1;
                continue;
            };
            certs += 1;
            let (lhs, rhs) = (materialize(psi, &cert.chi), materialize(phi, &cert.chi));
            let total: Rational = cert.chi.entries().iter().sum();
            if majorized_by_hinge(&lhs, &rhs) && total.is_one() && cert.chi.dim() == dim {
                sound += 1;
            }
            let bound_ok = match dimension_lower_bound(psi, phi) {
                Ok(bd) => (cert.chi.rank() as f64) + 1e-12 >= bd.raw_bound,
                Err(_) => true,
            };
            if bound_ok {
                consistent += 1;
            }
        }
    }
    outcome(
        sound == runs && deterministic == runs && consistent == runs && certs > 0,
        format!("{runs} searches, {certs} certificates, sound {sound}, deterministic {deterministic}, bound-consistent {consistent}"),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 LOCC on the six-level example", criterion_1),
        ("2 eLOCC on the six-level example", criterion_2),
        ("3 catalyst dimension bound", criterion_3),
        ("4 k=db-2 bound on C_2(chi)", criterion_4),
        ("5 identity suite", criterion_5),
        ("6 concurrence multiplicativity", criterion_6),
        ("7 necessary conditions on verified catalysts", criterion_7),
        ("8 search soundness and determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
