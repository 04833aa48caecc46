//! Batch mode: seeded random-matrix corpora run against a selected check,
//! with per-item determinism (item seed = seed + index) and a work pool.

use clap::ValueEnum;
use rayon::prelude::*;
use toricdyn_core::dynamics::MonomialMap;
use toricdyn_core::io::matrix_to_json;
use toricdyn_core::linalg::Matrix;
use toricdyn_core::rng::SplitMix64;
use toricdyn_core::{Int, IntMatrix};

use crate::checks;
use crate::errors::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    /// Pipeline pullback matrices equal the closed form, exactly.
    OracleEquivalence,
    /// Pipeline pullbacks satisfy the balancing relation.
    WeightVerify,
    /// Norm growth at l = 30 lands within 5% of lambda_k (ties exempt).
    Growth,
}

#[derive(Clone, Debug)]
pub struct BatchSpec {
    pub count: usize,
    pub n: usize,
    pub bound: i64,
    pub seed: u64,
    pub check: CheckKind,
}

pub struct BatchOutcome {
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<serde_json::Value>,
}

impl BatchOutcome {
    pub fn to_json(&self, spec: &BatchSpec) -> serde_json::Value {
        let check = match spec.check {
            CheckKind::OracleEquivalence => "oracle-equivalence",
            CheckKind::WeightVerify => "weight-verify",
            CheckKind::Growth => "growth",
        };
        serde_json::json!({
            "count": spec.count,
            "n": spec.n,
            "bound": spec.bound,
            "seed": spec.seed,
            "check": check,
            "passed": self.passed,
            "failed": self.failed,
            "first_failure": self.first_failure,
        })
    }
}

/// A nonsingular integer matrix with entries in [-bound, bound], sampled
/// deterministically from the item seed.
pub fn random_nonsingular(n: usize, bound: i64, item_seed: u64) -> IntMatrix {
    let mut rng = SplitMix64::new(item_seed);
    loop {
        let m = Matrix::from_fn(n, n, |_, _| Int::from(rng.int_in(-bound, bound)));
        if m.det().expect("square") != Int::from(0) {
            return m;
        }
    }
}

pub fn run_batch(spec: &BatchSpec) -> Result<BatchOutcome, CliError> {
    if spec.count < 1 {
        return Err(CliError::input("INPUT", "count must be at least 1"));
    }
    if spec.bound < 1 {
        return Err(CliError::input("INPUT", "entry bound must be at least 1"));
    }
    if spec.n < 1 {
        return Err(CliError::input("INPUT", "n must be at least 1"));
    }
    let items: Vec<usize> = (0..spec.count).collect();
    let results: Vec<(usize, Option<serde_json::Value>)> = items
        .par_iter()
        .map(|&i| {
            let item_seed = spec.seed.wrapping_add(i as u64);
            let psi = random_nonsingular(spec.n, spec.bound, item_seed);
            let failure = run_one(spec.check, &psi).unwrap_or_else(|e| {
                Some(serde_json::json!({ "error": e.to_string() }))
            });
            let detail = failure.map(|f| {
                serde_json::json!({
                    "index": i,
                    "seed": item_seed,
                    "matrix": matrix_to_json(&psi),
                    "failure": f,
                })
            });
            (i, detail)
        })
        .collect();
    let failed = results.iter().filter(|(_, d)| d.is_some()).count();
    let first_failure = results
        .iter()
        .filter_map(|(_, d)| d.clone())
        .next();
    Ok(BatchOutcome {
        passed: spec.count - failed,
        failed,
        first_failure,
    })
}

fn run_one(
    check: CheckKind,
    psi: &IntMatrix,
) -> Result<Option<serde_json::Value>, toricdyn_core::dynamics::DynError> {
    match check {
        CheckKind::OracleEquivalence => {
            let map = MonomialMap::new(psi.clone())?;
            checks::oracle_check(&map)
        }
        CheckKind::WeightVerify => {
            let map = MonomialMap::new(psi.clone())?;
            checks::balance_check(&map)
        }
        CheckKind::Growth => {
            let verdicts = checks::growth_check(psi, 30)?;
            Ok(verdicts.iter().find(|v| !v.pass).map(|v| {
                serde_json::json!({
                    "k": v.k,
                    "lambda_k": v.lambda,
                    "last_term": v.last,
                    "tie_exempt": v.tie,
                })
            }))
        }
    }
}
