//! Map-compatible refinement: subdivide a complete fan so that a given
//! integer matrix maps every cone of the refinement into some cone of the
//! original fan, then simplicialize.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::lattice::primitive;
use crate::{IntMatrix, LatticeVector};

use super::cone::{make_cone, rays_from_h_rep, triangulate, Cone, ConeKey};
use super::{Fan, FanError};

/// True iff psi maps every cone of `src` into some cone of `dst`
/// (tested on generators against the dual descriptions).
pub fn is_compatible(src: &Fan, psi: &IntMatrix, dst: &Fan) -> Result<bool, FanError> {
    if !psi.is_square() || psi.rows() != src.rank() || src.rank() != dst.rank() {
        return Err(FanError::DimensionMismatch);
    }
    for cone in src.cones() {
        let images = cone.mapped_generators(psi)?;
        if dst.smallest_containing_cone(&images).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Refine every non-simplicial cone into simplicial cones over its own
/// rays (pulling triangulation), preserving support and face closure.
pub fn simplicialize(fan: &Fan) -> Result<Fan, FanError> {
    let mut pieces = Vec::new();
    let mut memo: BTreeMap<ConeKey, Vec<Cone>> = BTreeMap::new();
    for cone in fan.maximal_cones() {
        match memo.get(cone.key()) {
            Some(t) => pieces.extend(t.clone()),
            None => {
                let t = triangulate(cone)?;
                memo.insert(cone.key().clone(), t.clone());
                pieces.extend(t);
            }
        }
    }
    Fan::from_maximal(fan.rank(), pieces)
}

/// A complete simplicial fan refining `fan` such that psi maps each of its
/// cones into a cone of `fan`: the full-dimensional cells are the
/// intersections sigma ∩ psi^{-1}(sigma') over pairs of maximal cones,
/// face-closed and then simplicialized.
pub fn common_refinement(fan: &Fan, psi: &IntMatrix) -> Result<Fan, FanError> {
    let n = fan.rank();
    if !psi.is_square() || psi.rows() != n {
        return Err(FanError::DimensionMismatch);
    }
    if psi.det()?.is_zero() {
        return Err(FanError::Singular);
    }
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    let psi_t = psi.transpose();
    let maximal: Vec<&Cone> = fan.maximal_cones().collect();
    // facet normals of psi^{-1}(sigma'): pull each normal u back to psi^T u
    let pulled: Vec<Vec<LatticeVector>> = maximal
        .iter()
        .map(|c| {
            c.facet_normals()
                .iter()
                .map(|u| primitive(&psi_t.mul_vec(u).unwrap()))
                .collect()
        })
        .collect();
    let mut cells: BTreeMap<ConeKey, Cone> = BTreeMap::new();
    for sigma in &maximal {
        for back in &pulled {
            let mut inequalities: Vec<LatticeVector> = sigma.facet_normals().to_vec();
            inequalities.extend(back.iter().cloned());
            let rays = rays_from_h_rep(n, &[], &inequalities)?;
            let cell = make_cone(n, &rays)?;
            if cell.dim() == n {
                cells.entry(cell.key().clone()).or_insert(cell);
            }
        }
    }
    let refined = Fan::from_maximal(n, cells.into_values().collect())?;
    simplicialize(&refined)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_p1n, fan_pn};
    use crate::lattice::from_i64;
    use crate::linalg::Matrix;
    use crate::rng::SplitMix64;
    use crate::Int;

    fn im(rows: Vec<Vec<i64>>) -> IntMatrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_compatible() {
        let fan = fan_p1n(2).unwrap();
        let id: IntMatrix = Matrix::identity(2);
        assert!(is_compatible(&fan, &id, &fan).unwrap());
    }

    #[test]
    fn negation_not_compatible_on_p2() {
        // the image of a maximal cone of P^2 lies in no single cone
        let fan = fan_pn(2).unwrap();
        let neg = im(vec![vec![-1, 0], vec![0, -1]]);
        assert!(!is_compatible(&fan, &neg, &fan).unwrap());
    }

    #[test]
    fn refinement_with_identity_returns_same_fan() {
        for fan in [fan_p1n(2).unwrap(), fan_pn(2).unwrap()] {
            let id: IntMatrix = Matrix::identity(2);
            let refined = common_refinement(&fan, &id).unwrap();
            assert_eq!(refined.len(), fan.len());
            for c in fan.cones() {
                assert!(refined.contains_key(c.key()));
            }
        }
    }

    #[test]
    fn cremona_refinement_on_p2() {
        let fan = fan_pn(2).unwrap();
        let neg = im(vec![vec![-1, 0], vec![0, -1]]);
        let refined = common_refinement(&fan, &neg).unwrap();
        assert!(refined.is_complete());
        assert!(refined.validate().ok());
        assert!(is_compatible(&refined, &neg, &fan).unwrap());
        // every refined cone sits inside a cone of the original fan
        let id: IntMatrix = Matrix::identity(2);
        assert!(is_compatible(&refined, &id, &fan).unwrap());
    }

    #[test]
    fn shear_refinement_on_p1xp1() {
        let fan = fan_p1n(2).unwrap();
        let shear = im(vec![vec![1, 1], vec![0, 1]]);
        let refined = common_refinement(&fan, &shear).unwrap();
        assert!(refined.is_complete());
        assert!(refined.validate().ok());
        assert!(is_compatible(&refined, &shear, &fan).unwrap());
        assert!(is_compatible(&refined, &Matrix::identity(2), &fan).unwrap());
        // the quadrants get split along psi^{-1} of the axes
        assert!(refined.cones_of_dim(2).count() > 4);
    }

    #[test]
    fn refinement_random_matrices() {
        let mut rng = SplitMix64::new(404);
        for n in [2usize, 3] {
            let fan = fan_p1n(n).unwrap();
            let mut done = 0;
            while done < 4 {
                let psi = Matrix::from_fn(n, n, |_, _| Int::from(rng.int_in(-3, 3)));
                if psi.det().unwrap().is_zero() {
                    continue;
                }
                let refined = common_refinement(&fan, &psi).unwrap();
                assert!(refined.is_complete(), "psi = {:?}", psi);
                assert!(is_compatible(&refined, &psi, &fan).unwrap(), "psi = {:?}", psi);
                assert!(refined.validate().ok(), "psi = {:?}", psi);
                for c in refined.cones() {
                    assert!(c.is_simplicial());
                }
                done += 1;
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let fan = fan_p1n(2).unwrap();
        let sing = im(vec![vec![1, 1], vec![1, 1]]);
        assert!(matches!(
            common_refinement(&fan, &sing),
            Err(FanError::Singular)
        ));
    }

    #[test]
    fn simplicialize_leaves_simplicial_fans_unchanged() {
        let fan = fan_pn(3).unwrap();
        let s = simplicialize(&fan).unwrap();
        assert_eq!(s.len(), fan.len());
    }

    #[test]
    fn simplicialize_splits_square_cone() {
        // complete fan in R^2 with one non-simplicial "cone" is impossible;
        // use a non-complete fan over a single 3-d cone on a square base
        let square = make_cone(
            3,
            &[
                from_i64(&[1, 1, 1]),
                from_i64(&[1, -1, 1]),
                from_i64(&[-1, 1, 1]),
                from_i64(&[-1, -1, 1]),
            ],
        )
        .unwrap();
        let fan = Fan::from_maximal(3, vec![square.clone()]).unwrap();
        let s = simplicialize(&fan).unwrap();
        assert!(s.validate().ok());
        assert_eq!(s.cones_of_dim(3).count(), 2);
        // support preserved on a sample of directions
        let mut rng = SplitMix64::new(77);
        for _ in 0..1000 {
            let p = from_i64(&[rng.int_in(-9, 9), rng.int_in(-9, 9), rng.int_in(-9, 9)]);
            let in_before = square.contains(&p);
            let in_after = s.cones_of_dim(3).any(|c| c.contains(&p));
            assert_eq!(in_before, in_after, "{:?}", p);
        }
    }
}
