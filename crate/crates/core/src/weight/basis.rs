//! Standard Minkowski-weight bases with their Poincaré-dual data, for the
//! two targets where the pipeline pushes classes forward: (P^1)^n and P^n.

use std::sync::Arc;

use num_traits::Zero;

use crate::fan::{fan_p1n, fan_pn, ConeKey, Fan};
use crate::lattice::unit;
use crate::linalg::{k_subsets, subset_complement};
use crate::{Int, LatticeVector};

use super::{same_fan, MinkowskiWeight, WeightError};

/// Which standard fan a `DualBasisSpec` was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardTarget {
    /// Product of projective lines (P^1)^n.
    P1n,
    /// Projective space P^n.
    Pn,
}

/// One basis element of A^k(target) together with its Poincaré-dual data:
/// the homology cone it is dual to, and the codim-(n-k) weight to cup
/// against when reading off the corresponding coordinate.
#[derive(Clone, Debug)]
pub struct DualBasisElement {
    pub weight: MinkowskiWeight,
    pub dual_weight: MinkowskiWeight,
    pub dual_cone: ConeKey,
    pub label: String,
}

/// A basis of A^k(target) for a standard target fan.
#[derive(Clone, Debug)]
pub struct DualBasisSpec {
    pub target: Arc<Fan>,
    pub kind: StandardTarget,
    pub codim: usize,
    pub elements: Vec<DualBasisElement>,
}

/// Recognize a standard fan by structural comparison.
pub(crate) fn detect_target(fan: &Fan) -> Option<StandardTarget> {
    let n = fan.rank();
    if n == 0 {
        return None;
    }
    let matches = |candidate: &Fan| {
        candidate.len() == fan.len() && candidate.cones().iter().all(|c| fan.contains_key(c.key()))
    };
    if let Ok(p1n) = fan_p1n(n) {
        if matches(&p1n) {
            return Some(StandardTarget::P1n);
        }
    }
    if let Ok(pn) = fan_pn(n) {
        if matches(&pn) {
            return Some(StandardTarget::Pn);
        }
    }
    None
}

/// The standard basis of A^k for a (P^1)^n or P^n fan.
///
/// On (P^1)^n the basis is {c_alpha : |alpha| = n-k} with
/// c_alpha(sigma) = 1 iff sigma ⊂ span{e_i : i in alpha}; c_alpha is dual to
/// the orbit closure of the all-plus cone on the complementary axes. On P^n
/// the group is generated by the constant weight 1.
pub fn standard_weight_basis(
    target: &Arc<Fan>,
    k: usize,
) -> Result<DualBasisSpec, WeightError> {
    let n = target.rank();
    if k > n {
        return Err(WeightError::CodimMismatch);
    }
    let kind = detect_target(target).ok_or(WeightError::UnsupportedTarget)?;
    let elements = match kind {
        StandardTarget::P1n => {
            let mut out = Vec::new();
            for alpha in k_subsets(n, n - k) {
                let weight = span_indicator_weight(target, k, &alpha);
                let alpha_c = subset_complement(&alpha, n);
                let dual_weight = span_indicator_weight(target, n - k, &alpha_c);
                let dual_cone: ConeKey = {
                    let mut gens: Vec<LatticeVector> =
                        alpha_c.iter().map(|&i| unit(n, i)).collect();
                    gens.sort();
                    gens
                };
                debug_assert!(target.contains_key(&dual_cone));
                out.push(DualBasisElement {
                    weight,
                    dual_weight,
                    dual_cone,
                    label: format!("c_{:?}", one_based(&alpha)),
                });
            }
            out
        }
        StandardTarget::Pn => {
            let weight = MinkowskiWeight::constant(target.clone(), k, Int::from(1));
            let dual_weight = MinkowskiWeight::constant(target.clone(), n - k, Int::from(1));
            // any cone of codimension n-k works as the dual; take e_1..e_k
            let dual_cone: ConeKey = (0..k).map(|i| unit(n, i)).collect::<Vec<_>>();
            let mut dual_cone = dual_cone;
            dual_cone.sort();
            debug_assert!(target.contains_key(&dual_cone));
            vec![DualBasisElement {
                weight,
                dual_weight,
                dual_cone,
                label: format!("c_{}", k),
            }]
        }
    };
    Ok(DualBasisSpec {
        target: target.clone(),
        kind,
        codim: k,
        elements,
    })
}

/// c_alpha: value 1 on cones contained in span{e_i : i in alpha}, else 0.
fn span_indicator_weight(fan: &Arc<Fan>, codim: usize, alpha: &[usize]) -> MinkowskiWeight {
    MinkowskiWeight::from_fn(fan.clone(), codim, |cone| {
        let inside = cone.generators().iter().all(|g| {
            g.iter()
                .enumerate()
                .all(|(i, x)| alpha.contains(&i) || x.is_zero())
        });
        if inside {
            Int::from(1)
        } else {
            Int::zero()
        }
    })
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

/// Sanity helper for tests and callers: the spec belongs to this fan.
pub(crate) fn spec_matches_fan(spec: &DualBasisSpec, fan: &Arc<Fan>) -> bool {
    same_fan(&spec.target, fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::from_i64;
    use crate::weight::verify_weight;

    #[test]
    fn p1n_basis_sizes_and_balance() {
        for n in 1..=3 {
            let fan = Arc::new(fan_p1n(n).unwrap());
            for k in 0..=n {
                let spec = standard_weight_basis(&fan, k).unwrap();
                assert_eq!(spec.kind, StandardTarget::P1n);
                let binom = k_subsets(n, n - k).len();
                assert_eq!(spec.elements.len(), binom);
                for el in &spec.elements {
                    assert!(verify_weight(&el.weight).unwrap().ok());
                    assert!(verify_weight(&el.dual_weight).unwrap().ok());
                }
            }
        }
    }

    #[test]
    fn pn_basis_is_constant() {
        // n = 1 is excluded from the kind assertion: P^1 and (P^1)^1 are the
        // same fan and detection may report either
        for n in 2..=3 {
            let fan = Arc::new(fan_pn(n).unwrap());
            for k in 0..=n {
                let spec = standard_weight_basis(&fan, k).unwrap();
                assert_eq!(spec.kind, StandardTarget::Pn);
                assert_eq!(spec.elements.len(), 1);
                let w = &spec.elements[0].weight;
                assert!(w.values().values().all(|v| *v == Int::from(1)));
                assert!(verify_weight(w).unwrap().ok());
            }
        }
    }

    #[test]
    fn p1n2_k1_alpha_1_supported_on_e1_rays() {
        let fan = Arc::new(fan_p1n(2).unwrap());
        let spec = standard_weight_basis(&fan, 1).unwrap();
        // lexicographic: alpha = {1} first (0-based {0})
        let c1 = &spec.elements[0].weight;
        assert_eq!(*c1.value(&vec![from_i64(&[1, 0])]), Int::from(1));
        assert_eq!(*c1.value(&vec![from_i64(&[-1, 0])]), Int::from(1));
        assert_eq!(*c1.value(&vec![from_i64(&[0, 1])]), Int::zero());
        assert_eq!(*c1.value(&vec![from_i64(&[0, -1])]), Int::zero());
    }

    #[test]
    fn k0_basis_is_fundamental_class_dual() {
        for fan in [Arc::new(fan_p1n(2).unwrap()), Arc::new(fan_pn(2).unwrap())] {
            let spec = standard_weight_basis(&fan, 0).unwrap();
            assert_eq!(spec.elements.len(), 1);
            let w = &spec.elements[0].weight;
            for v in w.values().values() {
                assert_eq!(*v, Int::from(1));
            }
        }
    }

    #[test]
    fn unsupported_target_rejected() {
        // a complete fan that is neither standard: refine (P^1)^2 by a shear
        let fan = Arc::new(
            crate::fan::common_refinement(
                &fan_p1n(2).unwrap(),
                &crate::linalg::Matrix::from_rows(vec![
                    vec![Int::from(1), Int::from(1)],
                    vec![Int::zero(), Int::from(1)],
                ])
                .unwrap(),
            )
            .unwrap(),
        );
        assert!(matches!(
            standard_weight_basis(&fan, 1),
            Err(WeightError::UnsupportedTarget)
        ));
    }
}
