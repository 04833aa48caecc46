//! Degree growth on P^n: deg_k(f^l) computed by running the P^n pipeline
//! on psi^l for each l, plus a least-squares fit of the polynomial
//! correction order in deg_k(f^l) ~ C * l^m * lambda_k^l.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::linalg::eigenvalue_moduli;
use crate::Int;

use super::pipeline::PnPipeline;
use super::{DynError, MonomialMap};

/// The degree sequence of the iterates and the fitted growth law.
#[derive(Clone, Debug)]
pub struct GrowthFit {
    pub k: usize,
    /// deg_k(f^l) for l = 1..=lmax, exact.
    pub values: Vec<Int>,
    /// lambda_k of the map, from the eigenvalue moduli.
    pub lambda_k: f64,
    /// Exponential base fitted from the sequence alone (slope of log deg).
    pub fitted_base: f64,
    /// Fitted polynomial order m in deg ~ C l^m lambda^l.
    pub fitted_order: f64,
    /// Set when the sequence does not follow a clean power law (for
    /// example periodic maps, where the fit is meaningless).
    pub degenerate: bool,
}

/// Default iterate count: the refinement for psi^l grows with l, so higher
/// ranks default to shorter sequences.
pub fn default_growth_lmax(n: usize) -> usize {
    if n <= 2 {
        8
    } else {
        5
    }
}

/// Compute deg_k(f^l) for l = 1..=lmax through the P^n pipeline, feeding
/// psi^l to a fresh refinement for every l (the refinement depends on the
/// iterate), then fit the growth law.
pub fn degree_growth_pn(map: &MonomialMap, k: usize, lmax: usize) -> Result<GrowthFit, DynError> {
    let n = map.rank();
    if k > n {
        return Err(DynError::KOutOfRange { k, n });
    }
    if lmax < 3 {
        return Err(DynError::LmaxTooSmall(lmax));
    }
    let values: Result<Vec<Int>, DynError> = (1..=lmax as u32)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&l| {
            let iterate = map.iterate(l);
            PnPipeline::new(&iterate, 0)?.degree(k)
        })
        .collect();
    let values = values?;
    let moduli = eigenvalue_moduli(map.psi())?;
    let lambda_k = moduli.top_product(k);
    Ok(fit_growth(k, values, lambda_k))
}

fn fit_growth(k: usize, values: Vec<Int>, lambda_k: f64) -> GrowthFit {
    let logs: Vec<f64> = values
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::MAX).max(1e-300).ln())
        .collect();
    let lmax = values.len();
    // base estimate: least squares of log deg against l
    let xs: Vec<f64> = (1..=lmax).map(|l| l as f64).collect();
    let (slope, _) = least_squares(&xs, &logs);
    let fitted_base = slope.exp();
    // order estimate: residual against log l (skip l = 1 where log l = 0)
    let res_x: Vec<f64> = (2..=lmax).map(|l| (l as f64).ln()).collect();
    let res_y: Vec<f64> = (2..=lmax)
        .map(|l| logs[l - 1] - (l as f64) * lambda_k.ln())
        .collect();
    let (order, intercept) = least_squares(&res_x, &res_y);
    // residual spread after the fit decides whether the law is clean
    let spread = res_x
        .iter()
        .zip(&res_y)
        .map(|(x, y)| (y - (order * x + intercept)).abs())
        .fold(0.0_f64, f64::max);
    GrowthFit {
        k,
        values,
        lambda_k,
        fitted_base,
        fitted_order: order,
        degenerate: spread > 0.1,
    }
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return (0.0, sy / n.max(1.0));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}
