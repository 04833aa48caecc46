//! Norm growth of compound-matrix powers: the finite-l face of the
//! dynamical-degree limit λ_k = lim ||(Λ^k ψ)^l||^(1/l).

use num_traits::{Signed, ToPrimitive, Zero};

use crate::Int;

use super::compound::compound_matrix;
use super::{LinalgError, Matrix};

/// The sequence ||(Λ^k a)^l||^(1/l) for l = 1..=lmax, where the norm is the
/// maximum absolute value of the entries. Powers are exact big integers;
/// only the final root extraction is floating point.
pub fn norm_growth_sequence(
    a: &Matrix<Int>,
    k: usize,
    lmax: usize,
) -> Result<Vec<f64>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare);
    }
    if k > a.rows() {
        return Err(LinalgError::KOutOfRange { k, n: a.rows() });
    }
    if a.det()?.is_zero() {
        return Err(LinalgError::Singular);
    }
    let b = compound_matrix(a, k)?;
    let mut power = Matrix::identity(b.rows());
    let mut out = Vec::with_capacity(lmax);
    for l in 1..=lmax {
        power = power.mul(&b)?;
        out.push((big_ln(&power.max_abs()) / l as f64).exp());
    }
    Ok(out)
}

/// Natural log of a nonnegative big integer, robust to values beyond f64
/// range. ln(0) is returned as -inf, which exponentiates back to 0.
pub(crate) fn big_ln(x: &Int) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    debug_assert!(!x.is_negative());
    if let Some(f) = x.to_f64() {
        if f.is_finite() {
            return f.ln();
        }
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}
