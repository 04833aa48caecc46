//! The mathematical checks shared by `batch` and the acceptance suite:
//! closed-form/pipeline agreement, balancing of pipeline pullbacks, and
//! norm-growth convergence to the dynamical degrees.

use toricdyn_core::dynamics::{pullback_matrix_closed, DynError, MonomialMap, P1nPipeline};
use toricdyn_core::linalg::{eigenvalue_moduli, norm_growth_sequence};
use toricdyn_core::weight::verify_weight;
use toricdyn_core::IntMatrix;

use crate::output::pullback_matrix_json;

/// Relative gap below which two adjacent moduli count as tied; ties make
/// the compound power method converge slower than any fixed-l bound.
pub const TIE_GAP: f64 = 1e-7;
/// Relative tolerance for the l = lmax growth term against lambda_k.
pub const GROWTH_TOLERANCE: f64 = 0.05;

/// Entrywise equality of the pipeline and closed-form pullback matrices
/// for every k. Returns the first mismatch as a JSON detail.
pub fn oracle_check(map: &MonomialMap) -> Result<Option<serde_json::Value>, DynError> {
    let pipeline = P1nPipeline::new(map, 0)?;
    for k in 0..=map.rank() {
        let via_pipeline = pipeline.pullback_matrix(k)?;
        let closed = pullback_matrix_closed(map, k)?;
        if via_pipeline.matrix != closed.matrix {
            return Ok(Some(serde_json::json!({
                "k": k,
                "pipeline": pullback_matrix_json(&via_pipeline),
                "closed": pullback_matrix_json(&closed),
            })));
        }
    }
    Ok(None)
}

/// Every pipeline pullback of a standard basis weight must satisfy the
/// balancing relation on the refinement.
pub fn balance_check(map: &MonomialMap) -> Result<Option<serde_json::Value>, DynError> {
    let pipeline = P1nPipeline::new(map, 0)?;
    for k in 0..=map.rank() {
        let (spec, pulled) = pipeline.pulled_basis(k)?;
        for (el, w) in spec.elements.iter().zip(&pulled) {
            let report = verify_weight(w)?;
            if !report.ok() {
                let v = &report.violations[0];
                return Ok(Some(serde_json::json!({
                    "k": k,
                    "weight": el.label,
                    "tau": format!("{:?}", v.tau),
                    "sum": v.sum.to_string(),
                })));
            }
        }
    }
    Ok(None)
}

/// One norm-growth verdict.
#[derive(Clone, Debug)]
pub struct GrowthVerdict {
    pub k: usize,
    pub lambda: f64,
    pub last: f64,
    pub tie: bool,
    pub pass: bool,
}

/// norm_growth_sequence(psi, k, lmax) must land within GROWTH_TOLERANCE of
/// lambda_k for every k; modulus ties |mu_k| = |mu_{k+1}| are exempt from
/// the bound but the deviation must not grow over the tail of the sequence.
pub fn growth_check(psi: &IntMatrix, lmax: usize) -> Result<Vec<GrowthVerdict>, DynError> {
    let n = psi.rows();
    let moduli = eigenvalue_moduli(psi)?;
    let ms = moduli.as_slice();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let seq = norm_growth_sequence(psi, k, lmax)?;
        let lambda = moduli.top_product(k);
        let last = *seq.last().expect("lmax >= 1");
        let tie = k < n && {
            let hi = ms[k - 1];
            let lo = ms[k];
            (hi - lo).abs() <= TIE_GAP * hi.max(1.0)
        };
        let pass = if tie {
            // tied top moduli make the sequence oscillate toward lambda with
            // a slowly decaying quasi-periodic envelope; monotone-trend
            // consistency is judged on windowed worst deviations (with slack
            // for incommensurate phases) plus a loose absolute guard
            let third = lmax / 3;
            let dev = |window: &[f64]| {
                window
                    .iter()
                    .map(|s| (s - lambda).abs())
                    .fold(0.0_f64, f64::max)
            };
            let tail = dev(&seq[lmax - third..]);
            let earlier = dev(&seq[lmax - 2 * third..lmax - third]);
            let trend_ok = tail <= earlier * 1.25 + 1e-12;
            let loose_bound = (last - lambda).abs() <= 0.25 * lambda.max(f64::MIN_POSITIVE);
            trend_ok && loose_bound
        } else {
            (last - lambda).abs() <= GROWTH_TOLERANCE * lambda.max(f64::MIN_POSITIVE)
        };
        out.push(GrowthVerdict {
            k,
            lambda,
            last,
            tie,
            pass,
        });
    }
    Ok(out)
}
