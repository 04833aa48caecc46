//! Eigenvalue moduli of integer matrices.
//!
//! Only the absolute values of the eigenvalues are consumed downstream
//! (dynamical degrees are products of top moduli), so the solver works at
//! double precision: Aberth–Ehrlich simultaneous iteration on each
//! square-free factor of the characteristic polynomial, followed by Newton
//! polishing. Splitting off repeated roots exactly first keeps every root
//! simple, which is what makes 1e-9 relative accuracy reachable in f64.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Int;

use super::charpoly::{char_poly, square_free_decomposition};
use super::{LinalgError, Matrix};

/// Eigenvalue absolute values, multiplicity-aware, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenModuli {
    moduli: Vec<f64>,
}

impl EigenModuli {
    pub fn as_slice(&self) -> &[f64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Product of the k largest moduli (k = 0 gives 1).
    pub fn top_product(&self, k: usize) -> f64 {
        self.moduli[..k].iter().product()
    }
}

/// Moduli of the eigenvalues of `a`, counted with multiplicity.
pub fn eigenvalue_moduli(a: &Matrix<Int>) -> Result<EigenModuli, LinalgError> {
    let p = char_poly(a)?;
    let coeffs = p.coeffs();
    // roots at zero = number of leading zero low-order coefficients
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced: Vec<Int> = coeffs[zeros..].to_vec();
    let mut moduli = vec![0.0; zeros];
    for (factor, mult) in square_free_decomposition(&reduced) {
        let fc: Vec<f64> = factor.iter().map(big_to_f64).collect();
        for root in roots_squarefree(&fc) {
            for _ in 0..mult {
                moduli.push(root.norm());
            }
        }
    }
    moduli.sort_by(|x, y| y.partial_cmp(x).unwrap());
    debug_assert_eq!(moduli.len(), a.rows());
    Ok(EigenModuli { moduli })
}

pub(crate) fn big_to_f64(x: &Int) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_deriv(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * (i as f64);
    }
    acc
}

/// All complex roots of a square-free real polynomial, by Aberth–Ehrlich
/// iteration plus a few Newton steps per root.
fn roots_squarefree(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = poly_degree_f64(coeffs);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    // Cauchy bound on root magnitude
    let bound = 1.0 + monic[..deg].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let radius = bound * 0.5;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.354) / (deg as f64);
            Complex64::from_polar(radius, angle) + Complex64::new(0.0, 0.001)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0_f64;
        for j in 0..deg {
            let pv = horner(&monic, z[j]);
            let dv = horner_deriv(&monic, z[j]);
            if dv.norm() == 0.0 {
                z[j] += Complex64::new(1e-6, 1e-6);
                max_step = f64::MAX;
                continue;
            }
            let newton = pv / dv;
            let mut sum = Complex64::new(0.0, 0.0);
            for (k, other) in z.iter().enumerate() {
                if k != j {
                    let diff = z[j] - other;
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Newton polish: roots are simple, so this converges quadratically
    for zj in z.iter_mut() {
        for _ in 0..4 {
            let pv = horner(&monic, *zj);
            let dv = horner_deriv(&monic, *zj);
            if dv.norm() == 0.0 {
                break;
            }
            *zj -= pv / dv;
        }
    }
    z
}

fn poly_degree_f64(coeffs: &[f64]) -> usize {
    let mut d = coeffs.len() - 1;
    while d > 0 && coeffs[d] == 0.0 {
        d -= 1;
    }
    d
}
