//! `catalyze`: JSON reports on LOCC and catalytic convertibility.
//!
//! Exit status: 0 for an affirmative verdict, 1 for a negative one, 2 for
//! usage or input errors.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use catalyze_core::identities::{self, IdentityConfig};
use catalyze_core::io::{parse_schmidt, parse_schmidt_exact, AnySchmidt};
use catalyze_core::search::rationalize;
use catalyze_core::{
    dimension_lower_bound, ek_monotonicity_check, elocc_feasible, majorization_check, prop2_bound,
    prop2_check, prop3_threshold, r_of_chi, search_catalyst, verify_catalyst, GridConfig, Rational,
    Scalar, SchmidtVector, SearchConfig, Verdict,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "catalyze", version, about = "Entanglement transformation and catalysis checks on Schmidt vectors")]
struct Cli {
    /// Omit the timestamp so identical runs give byte-identical output.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Source state: a JSON file, inline JSON, or a comma-separated list.
    #[arg(long)]
    psi: String,
    /// Target state, same forms as --psi.
    #[arg(long)]
    phi: String,
    /// Rescale inputs to sum to one instead of rejecting them.
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact majorization test: can psi be turned into phi by LOCC?
    Locc(Pair),
    /// Renyi-entropy test for catalytic convertibility.
    Elocc {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1e-6)]
        alpha_min: f64,
        #[arg(long, default_value_t = 1e6)]
        alpha_max: f64,
        #[arg(long, default_value_t = 2000)]
        alpha_points: usize,
    },
    /// Necessary conditions on any catalyst, for a hypothesized catalyst rank b.
    Bound {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        b: usize,
    },
    /// Check a concrete catalyst candidate exactly.
    CheckCandidate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        chi: String,
        /// Round a decimal chi to nearby fractions with denominator at most this.
        #[arg(long)]
        rationalize: Option<u64>,
    },
    /// Numerical search for a catalyst, certified exactly.
    Search {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
    },
    /// Self-test of the symmetric-function identities in exact arithmetic.
    Identities {
        /// Number of random vector pairs.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra vectors to test against each other (repeatable).
        #[arg(long)]
        vector: Vec<String>,
    },
}

fn read_source(arg: &str) -> anyhow::Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

fn load(arg: &str, normalize: bool) -> anyhow::Result<AnySchmidt> {
    parse_schmidt(&read_source(arg)?, normalize).with_context(|| format!("invalid Schmidt vector {arg:?}"))
}

fn load_exact(arg: &str, normalize: bool) -> anyhow::Result<SchmidtVector<Rational>> {
    parse_schmidt_exact(&read_source(arg)?, normalize)
        .with_context(|| format!("invalid Schmidt vector {arg:?}"))
}

/// Both exact, or both float when either input is.
enum Inputs {
    Exact(SchmidtVector<Rational>, SchmidtVector<Rational>),
    Float(SchmidtVector<f64>, SchmidtVector<f64>),
}

fn load_pair(p: &Pair) -> anyhow::Result<Inputs> {
    Ok(match (load(&p.psi, p.normalize)?, load(&p.phi, p.normalize)?) {
        (AnySchmidt::Exact(a), AnySchmidt::Exact(b)) => Inputs::Exact(a, b),
        (a, b) => Inputs::Float(a.to_f64(), b.to_f64()),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn or_error<T: Serialize>(r: catalyze_core::Result<T>) -> Value {
    match r {
        Ok(v) => to_value(&v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

macro_rules! with_inputs {
    ($inputs:expr, |$psi:ident, $phi:ident| $body:expr) => {
        match $inputs {
            Inputs::Exact($psi, $phi) => $body,
            Inputs::Float($psi, $phi) => $body,
        }
    };
}

fn mode<S: Scalar>() -> &'static str {
    if S::EXACT { "exact" } else { "float" }
}

fn mode_of<S: Scalar>(_: &SchmidtVector<S>) -> &'static str {
    mode::<S>()
}

fn bound_report<S: Scalar>(psi: &SchmidtVector<S>, phi: &SchmidtVector<S>, b: usize) -> Value {
    json!({
        "mode": mode::<S>(),
        "dimension_bound": or_error(dimension_lower_bound(psi, phi)),
        "e2_e3_ratio": to_value(&prop3_threshold(psi, phi)),
        "k_db_minus_2": or_error(prop2_bound(psi, phi, b)),
    })
}

fn run(cli: Cli) -> anyhow::Result<(Value, bool)> {
    Ok(match cli.command {
        Command::Locc(pair) => with_inputs!(load_pair(&pair)?, |psi, phi| {
            let rep = majorization_check(&psi, &phi);
            let ok = rep.majorizes;
            (json!({ "command": "locc", "mode": mode_of(&psi), "report": to_value(&rep) }), ok)
        }),
        Command::Elocc { pair, alpha_min, alpha_max, alpha_points } => {
            let grid = GridConfig { alpha_min, alpha_max, points: alpha_points, ..GridConfig::default() };
            with_inputs!(load_pair(&pair)?, |psi, phi| {
                let rep = elocc_feasible(&psi, &phi, &grid)?;
                let ok = rep.elocc_verdict == Verdict::Feasible;
                (json!({ "command": "elocc", "mode": mode_of(&psi), "grid": to_value(&grid), "report": to_value(&rep) }), ok)
            })
        }
        Command::Bound { pair, b } => {
            let report = with_inputs!(load_pair(&pair)?, |psi, phi| bound_report(&psi, &phi, b));
            (json!({ "command": "bound", "b": b, "report": report }), true)
        }
        Command::CheckCandidate { pair, chi, rationalize: max_den } => {
            let psi = load_exact(&pair.psi, pair.normalize)?;
            let phi = load_exact(&pair.phi, pair.normalize)?;
            let chi = match max_den {
                Some(den) => {
                    let raw = load(&chi, pair.normalize)?.to_f64();
                    rationalize(raw.entries(), den).context("chi could not be rationalized")?
                }
                None => load_exact(&chi, pair.normalize)?,
            };
            let cert = verify_catalyst(&psi, &phi, &chi)?;
            let ok = cert.verified_exact;
            (
                json!({
                    "command": "check-candidate",
                    "certificate": to_value(&cert),
                    "e_k_margins": to_value(&ek_monotonicity_check(&psi, &phi, &chi)),
                    "r_of_chi": or_error(r_of_chi(&chi).map(|r| catalyze_core::scalar::ScalarRepr::of(&r))),
                    "e2_e3_ratio_holds": prop3_threshold(&psi, &phi).holds_for(&chi),
                    "k_db_minus_2": or_error(prop2_check(&psi, &phi, &chi)),
                }),
                ok,
            )
        }
        Command::Search { pair, dim, restarts, seed, max_iter } => {
            let psi = load_exact(&pair.psi, pair.normalize)?;
            let phi = load_exact(&pair.phi, pair.normalize)?;
            let config = SearchConfig { catalyst_dim: dim, restarts, seed, max_iterations: max_iter, ..SearchConfig::default() };
            let outcome = search_catalyst(&psi, &phi, &config)?;
            let ok = outcome.certificate.is_some();
            (json!({ "command": "search", "config": to_value(&config), "outcome": to_value(&outcome) }), ok)
        }
        Command::Identities { random, max_dim, seed, vector } => {
            if max_dim == 0 {
                bail!("--max-dim must be positive");
            }
            let vectors = vector
                .iter()
                .map(|v| load_exact(v, true))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let cases = random.unwrap_or(if vectors.is_empty() { 100 } else { 0 });
            let config = IdentityConfig { cases, max_dim, seed };
            let random_report = identities::run_random(&config);
            let vector_report = identities::run_on_vectors(&vectors);
            let ok = random_report.all_passed && vector_report.all_passed;
            (
                json!({
                    "command": "identities",
                    "config": to_value(&config),
                    "random": to_value(&random_report),
                    "vectors": to_value(&vector_report),
                    "all_passed": ok,
                }),
                ok,
            )
        }
    })
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CATALYZE_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("CATALYZE_THREADS={v:?} is not a count"))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let no_timestamp = cli.no_timestamp;
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok((mut report, ok)) => {
            if !no_timestamp {
                let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                report["timestamp"] = json!(secs);
            }
            report["verdict"] = json!(if ok { "pass" } else { "fail" });
            let text = serde_json::to_string_pretty(&report).expect("json");
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
