//! Translated intersections sigma ∩ (tau + v): the geometric primitive of
//! the fan displacement rule. For complementary-dimension cones and generic
//! v the intersection is empty or a single transversal point; anything else
//! is reported as DEGENERATE so the caller can re-pick v.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::{solve_int_to_rat, Matrix};
use crate::{Int, LatticeVector, Rat};

use super::cone::{triangulate, Cone};
use super::FanError;

/// Result of intersecting sigma with the translate tau + v.
#[derive(Clone, Debug, PartialEq)]
pub enum Meet {
    Empty,
    /// A single point, with `interior = true` iff it lies in the relative
    /// interiors of both cones.
    Point { point: Vec<Rat>, interior: bool },
    /// Non-generic configuration: the meeting point sits on a cone
    /// boundary, or v falls inside a deficient span sum.
    Degenerate,
}

/// Sign-only classification used by the displacement-rule table builder,
/// which never needs the meeting point itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum MeetClass {
    Empty,
    Interior,
    Degenerate,
}

/// Exact solve of p = Σ a_i u_i = v + Σ b_j w_j with a, b >= 0, where the
/// u_i generate sigma and the w_j generate tau.
///
/// Requires dim(sigma) + dim(tau) = rank. Non-simplicial cones are
/// triangulated internally; a point on an internal wall then reports as
/// DEGENERATE, which only costs the caller a retry with a fresh v.
pub fn translated_meet(sigma: &Cone, tau: &Cone, v: &[Int]) -> Result<Meet, FanError> {
    match meet_class(sigma, tau, v)? {
        MeetClass::Degenerate => Ok(Meet::Degenerate),
        MeetClass::Empty => Ok(Meet::Empty),
        MeetClass::Interior => {
            // recover the point: solve on some simplicial piece containing it
            let pieces = if sigma.is_simplicial() {
                vec![sigma.clone()]
            } else {
                triangulate(sigma)?
            };
            let tau_pieces = if tau.is_simplicial() {
                vec![tau.clone()]
            } else {
                triangulate(tau)?
            };
            for s in &pieces {
                for t in &tau_pieces {
                    if let Some(point) = solve_point(s, t, v)? {
                        return Ok(Meet::Point {
                            point,
                            interior: true,
                        });
                    }
                }
            }
            unreachable!("classification found an interior meet");
        }
    }
}

pub(crate) fn meet_class(sigma: &Cone, tau: &Cone, v: &[Int]) -> Result<MeetClass, FanError> {
    let n = sigma.rank();
    if tau.rank() != n || v.len() != n {
        return Err(FanError::DimensionMismatch);
    }
    if sigma.dim() + tau.dim() != n {
        return Err(FanError::MeetDimContract);
    }
    if sigma.is_simplicial() && tau.is_simplicial() {
        return classify_simplicial(sigma, tau, v);
    }
    let sigma_pieces = triangulate(sigma)?;
    let tau_pieces = triangulate(tau)?;
    let mut found = MeetClass::Empty;
    for s in &sigma_pieces {
        for t in &tau_pieces {
            match classify_simplicial(s, t, v)? {
                MeetClass::Degenerate => return Ok(MeetClass::Degenerate),
                MeetClass::Empty => {}
                MeetClass::Interior => {
                    debug_assert_eq!(found, MeetClass::Empty, "two interior meets");
                    found = MeetClass::Interior;
                }
            }
        }
    }
    Ok(found)
}

fn classify_simplicial(sigma: &Cone, tau: &Cone, v: &[Int]) -> Result<MeetClass, FanError> {
    let n = sigma.rank();
    // columns: sigma generators, then negated tau generators
    let mut cols: Vec<LatticeVector> = sigma.generators().to_vec();
    cols.extend(tau.generators().iter().map(|w| crate::lattice::neg(w)));
    debug_assert_eq!(cols.len(), n);
    if let Some(class) = classify_i128(&cols, v, n) {
        return Ok(class);
    }
    // exact big-integer fallback
    let m = Matrix::from_columns(n, &cols)?;
    let Some(coeffs) = solve_int_to_rat(&m, v)? else {
        // spans do not sum to R^n: disjoint translates whenever v stays off
        // the span sum; touching only when v falls inside it
        let mut aug = cols.clone();
        aug.push(v.to_vec());
        let outside = Matrix::from_columns(n, &aug)?.rank() > m.rank();
        return Ok(if outside {
            MeetClass::Empty
        } else {
            MeetClass::Degenerate
        });
    };
    Ok(classify_coeff_signs(coeffs.iter().map(|c| {
        if c.is_zero() {
            0
        } else if c.is_negative() {
            -1
        } else {
            1
        }
    })))
}

fn classify_coeff_signs(signs: impl Iterator<Item = i32>) -> MeetClass {
    let mut any_zero = false;
    let mut any_negative = false;
    for s in signs {
        if s == 0 {
            any_zero = true;
        } else if s < 0 {
            any_negative = true;
        }
    }
    if any_zero {
        MeetClass::Degenerate
    } else if any_negative {
        MeetClass::Empty
    } else {
        MeetClass::Interior
    }
}

/// Fast path: Cramer signs in checked i128 arithmetic. Returns None if any
/// entry or intermediate product leaves the i128 range (the caller then
/// redoes the computation in big integers) or when the system is singular
/// (the rank logic stays in one place, in the fallback).
fn classify_i128(cols: &[LatticeVector], v: &[Int], n: usize) -> Option<MeetClass> {
    let mut base = vec![0i128; n * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            base[i * n + j] = x.to_i128()?;
        }
    }
    let vi: Vec<i128> = v.iter().map(|x| x.to_i128()).collect::<Option<_>>()?;
    let mut scratch = vec![0i128; n * n];
    classify_base_i128(&base, &vi, n, &mut scratch)
}

/// Same fast path fed directly with flat i128 column blocks (sigma columns,
/// then already negated tau columns), for callers that precompute them.
/// `base` and `scratch` are caller-owned n*n buffers, reusable across calls.
pub(crate) fn classify_cols_i128(
    sigma_cols: &[i128],
    tau_cols_neg: &[i128],
    v: &[i128],
    n: usize,
    base: &mut [i128],
    scratch: &mut [i128],
) -> Option<MeetClass> {
    let p = sigma_cols.len() / n.max(1);
    for j in 0..p {
        for i in 0..n {
            base[i * n + j] = sigma_cols[j * n + i];
        }
    }
    let q = tau_cols_neg.len() / n.max(1);
    for j in 0..q {
        for i in 0..n {
            base[i * n + p + j] = tau_cols_neg[j * n + i];
        }
    }
    classify_base_i128(base, v, n, scratch)
}

fn classify_base_i128(base: &[i128], vi: &[i128], n: usize, scratch: &mut [i128]) -> Option<MeetClass> {
    scratch.copy_from_slice(base);
    let det = bareiss_det_i128(scratch, n)?;
    if det == 0 {
        return None;
    }
    let mut any_zero = false;
    let mut any_negative = false;
    for j in 0..n {
        scratch.copy_from_slice(base);
        for i in 0..n {
            scratch[i * n + j] = vi[i];
        }
        let dj = bareiss_det_i128(scratch, n)?;
        if dj == 0 {
            any_zero = true;
        } else if dj.signum() != det.signum() {
            any_negative = true;
        }
    }
    Some(if any_zero {
        MeetClass::Degenerate
    } else if any_negative {
        MeetClass::Empty
    } else {
        MeetClass::Interior
    })
}

fn bareiss_det_i128(m: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i * n + k] != 0);
            match swap {
                Some(i) => {
                    for c in 0..n {
                        m.swap(k * n + c, i * n + c);
                    }
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k * n + k].checked_mul(m[i * n + j])?;
                let b = m[i * n + k].checked_mul(m[k * n + j])?;
                m[i * n + j] = a.checked_sub(b)? / prev;
            }
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    Some(sign * m[n * n - 1])
}

/// Exact meeting point of two simplicial cones, when interior.
fn solve_point(sigma: &Cone, tau: &Cone, v: &[Int]) -> Result<Option<Vec<Rat>>, FanError> {
    let n = sigma.rank();
    let p = sigma.generators().len();
    let mut cols: Vec<LatticeVector> = sigma.generators().to_vec();
    cols.extend(tau.generators().iter().map(|w| crate::lattice::neg(w)));
    let m = Matrix::from_columns(n, &cols)?;
    let Some(coeffs) = solve_int_to_rat(&m, v)? else {
        return Ok(None);
    };
    if coeffs.iter().any(|c| c.is_zero() || c.is_negative()) {
        return Ok(None);
    }
    let mut point = vec![Rat::zero(); n];
    for (a, u) in coeffs[..p].iter().zip(sigma.generators()) {
        for (pi, ui) in point.iter_mut().zip(u) {
            *pi += a * Rat::from_integer(ui.clone());
        }
    }
    Ok(Some(point))
}
