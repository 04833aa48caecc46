//! Dynamical degrees and topological entropy of a dominant monomial map:
//! lambda_k is the product of the k largest eigenvalue moduli of psi, and
//! the entropy is the sum of log|mu| over the moduli exceeding 1.

use crate::linalg::{eigenvalue_moduli, norm_growth_sequence};

use super::growth::{degree_growth_pn, default_growth_lmax, GrowthFit};
use super::{closed::pullback_matrix_closed, DynError, MonomialMap, PullbackMatrix};

/// Everything the `degrees` front end reports for one map.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    /// lambda_0 .. lambda_n.
    pub lambdas: Vec<f64>,
    /// Eigenvalue moduli of psi, descending, with multiplicity.
    pub moduli: Vec<f64>,
    /// Topological entropy, natural log.
    pub entropy: f64,
    /// The same entropy in bits.
    pub entropy_log2: f64,
    /// norm_growth_sequence(psi, k, lmax) for k = 1..n: the empirical face
    /// of the limit defining lambda_k.
    pub growth: Vec<Vec<f64>>,
    /// Closed-form pullback matrices on (P^1)^n for k = 0..n.
    pub pullback_matrices: Vec<PullbackMatrix>,
    /// Degree-growth table on P^n (k = 1..n), when requested.
    pub degree_growth: Option<Vec<GrowthFit>>,
}

pub fn dynamical_degrees(map: &MonomialMap) -> Result<DegreeReport, DynError> {
    dynamical_degrees_with_lmax(map, 30)
}

pub fn dynamical_degrees_with_lmax(
    map: &MonomialMap,
    lmax: usize,
) -> Result<DegreeReport, DynError> {
    let n = map.rank();
    let moduli = eigenvalue_moduli(map.psi())?;
    let lambdas: Vec<f64> = (0..=n).map(|k| moduli.top_product(k)).collect();
    let entropy: f64 = moduli
        .as_slice()
        .iter()
        .filter(|m| **m > 1.0)
        .map(|m| m.ln())
        .sum();
    let mut growth = Vec::with_capacity(n);
    for k in 1..=n {
        growth.push(norm_growth_sequence(map.psi(), k, lmax)?);
    }
    let mut pullback_matrices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        pullback_matrices.push(pullback_matrix_closed(map, k)?);
    }
    Ok(DegreeReport {
        lambdas,
        moduli: moduli.as_slice().to_vec(),
        entropy,
        entropy_log2: entropy / std::f64::consts::LN_2,
        growth,
        pullback_matrices,
        degree_growth: None,
    })
}

/// Attach the P^n degree-growth table (one fit per k = 1..n) to a report.
pub fn attach_degree_growth(
    report: &mut DegreeReport,
    map: &MonomialMap,
    lmax: Option<usize>,
) -> Result<(), DynError> {
    let n = map.rank();
    let lmax = lmax.unwrap_or_else(|| default_growth_lmax(n));
    let mut fits = Vec::with_capacity(n);
    for k in 1..=n {
        fits.push(degree_growth_pn(map, k, lmax)?);
    }
    report.degree_growth = Some(fits);
    Ok(())
}
