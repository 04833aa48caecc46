//! The combinatorial pullback pipeline: refine the fan to make psi a toric
//! morphism, pull the basis weights back, push forward through the
//! projection formula, and read off matrix entries against the dual basis.

use std::sync::Arc;

use crate::fan::{common_refinement, fan_p1n, fan_pn, Fan};
use crate::linalg::Matrix;
use crate::weight::{
    pick_generic_with_tables, pullback_along_morphism, pushforward_with_tables,
    standard_weight_basis, DualBasisSpec, GenericVector, MeetTables, MinkowskiWeight,
};
use crate::{Int, IntMatrix};

use super::{DynError, MonomialMap, PullbackMatrix};

/// Shared state for running the pipeline on (P^1)^n: the target fan, its
/// psi-compatible simplicial refinement, and a generic displacement vector
/// with its meet tables (one genericity scan, reused across every k).
pub struct P1nPipeline {
    map: MonomialMap,
    target: Arc<Fan>,
    refined: Arc<Fan>,
    generic: GenericVector,
    tables: MeetTables,
}

impl P1nPipeline {
    pub fn new(map: &MonomialMap, seed: u64) -> Result<P1nPipeline, DynError> {
        let target = Arc::new(fan_p1n(map.rank())?);
        Self::with_target(map, target, seed)
    }

    fn with_target(map: &MonomialMap, target: Arc<Fan>, seed: u64) -> Result<P1nPipeline, DynError> {
        let refined = Arc::new(common_refinement(&target, map.psi())?);
        let (generic, tables) = pick_generic_with_tables(&refined, seed)?;
        Ok(P1nPipeline {
            map: map.clone(),
            target,
            refined,
            generic,
            tables,
        })
    }

    pub fn refined(&self) -> &Arc<Fan> {
        &self.refined
    }

    pub fn generic_vector(&self) -> &GenericVector {
        &self.generic
    }

    /// The standard basis of A^k on the target together with the pullbacks
    /// of its elements to the refinement.
    pub fn pulled_basis(
        &self,
        k: usize,
    ) -> Result<(DualBasisSpec, Vec<MinkowskiWeight>), DynError> {
        let spec = standard_weight_basis(&self.target, k)?;
        let mut pulled = Vec::with_capacity(spec.elements.len());
        for el in &spec.elements {
            pulled.push(pullback_along_morphism(
                self.map.psi(),
                &self.refined,
                &el.weight,
            )?);
        }
        Ok((spec, pulled))
    }

    /// The matrix of f* on A^k in the standard basis, computed entirely
    /// through the refinement / pullback / displacement-rule pushforward.
    pub fn pullback_matrix(&self, k: usize) -> Result<PullbackMatrix, DynError> {
        let n = self.map.rank();
        if k > n {
            return Err(DynError::KOutOfRange { k, n });
        }
        let (spec, pulled) = self.pulled_basis(k)?;
        let size = spec.elements.len();
        let mut columns: Vec<Vec<Int>> = Vec::with_capacity(size);
        for c_tilde in &pulled {
            columns.push(pushforward_with_tables(c_tilde, &spec, &self.tables)?);
        }
        let matrix = Matrix::from_fn(size, size, |r, c| columns[c][r].clone());
        Ok(PullbackMatrix {
            k,
            subsets: crate::linalg::k_subsets(n, n - k),
            matrix,
        })
    }
}

/// Same machinery on the fan of P^n, where every A^k is generated by the
/// constant weight and the pushforward coordinate is a single integer,
/// the k-th degree.
pub struct PnPipeline {
    map: MonomialMap,
    target: Arc<Fan>,
    refined: Arc<Fan>,
    tables: MeetTables,
}

impl PnPipeline {
    pub fn new(map: &MonomialMap, seed: u64) -> Result<PnPipeline, DynError> {
        let target = Arc::new(fan_pn(map.rank())?);
        let refined = Arc::new(common_refinement(&target, map.psi())?);
        let (_generic, tables) = pick_generic_with_tables(&refined, seed)?;
        Ok(PnPipeline {
            map: map.clone(),
            target,
            refined,
            tables,
        })
    }

    pub fn refined(&self) -> &Arc<Fan> {
        &self.refined
    }

    /// deg_k of the map on P^n via pullback and displacement evaluation.
    pub fn degree(&self, k: usize) -> Result<Int, DynError> {
        let n = self.map.rank();
        if k > n {
            return Err(DynError::KOutOfRange { k, n });
        }
        let spec = standard_weight_basis(&self.target, k)?;
        let pulled = pullback_along_morphism(self.map.psi(), &self.refined, &spec.elements[0].weight)?;
        let coords = pushforward_with_tables(&pulled, &spec, &self.tables)?;
        Ok(coords.into_iter().next().expect("one generator"))
    }

    /// The pulled-back generator weight, for balance checking.
    pub fn pulled_generator(&self, k: usize) -> Result<MinkowskiWeight, DynError> {
        let spec = standard_weight_basis(&self.target, k)?;
        Ok(pullback_along_morphism(
            self.map.psi(),
            &self.refined,
            &spec.elements[0].weight,
        )?)
    }
}

/// f* on A^k((P^1)^n) through the full combinatorial pipeline. Must agree
/// entrywise with `pullback_matrix_closed`.
pub fn pullback_matrix_pipeline(map: &MonomialMap, k: usize) -> Result<PullbackMatrix, DynError> {
    P1nPipeline::new(map, 0)?.pullback_matrix(k)
}

/// Degrees of the Cremona involution J (psi = -I) on P^n, k = 0..n,
/// computed through the full fan/weight pipeline and checked against the
/// binomial coefficients C(n, k).
pub fn cremona_degrees(n: usize) -> Result<Vec<Int>, DynError> {
    assert!(n >= 1);
    let neg: IntMatrix = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            Int::from(-1)
        } else {
            Int::from(0)
        }
    });
    let map = MonomialMap::new(neg)?;
    let pipeline = PnPipeline::new(&map, 0)?;
    let mut computed = Vec::with_capacity(n + 1);
    for k in 0..=n {
        computed.push(pipeline.degree(k)?);
    }
    let expected = binomials(n);
    if computed != expected {
        return Err(DynError::CremonaMismatch { computed, expected });
    }
    Ok(computed)
}

/// Row n of Pascal's triangle.
pub fn binomials(n: usize) -> Vec<Int> {
    let mut row = vec![Int::from(1)];
    for _ in 0..n {
        let mut next = vec![Int::from(1)];
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(Int::from(1));
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::pullback_matrix_closed;
    use crate::rng::SplitMix64;
    use num_traits::Zero;

    fn map(rows: Vec<Vec<i64>>) -> MonomialMap {
        MonomialMap::new(
            Matrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(Int::from).collect())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_pipeline_matrix() {
        let id = map(vec![vec![1, 0], vec![0, 1]]);
        for k in 0..=2 {
            let p = pullback_matrix_pipeline(&id, k).unwrap();
            assert_eq!(p.matrix, Matrix::identity(p.size()));
        }
    }

    #[test]
    fn diag_2_3_matches_closed_form() {
        let f = map(vec![vec![2, 0], vec![0, 3]]);
        for k in 0..=2 {
            let pipe = pullback_matrix_pipeline(&f, k).unwrap();
            let closed = pullback_matrix_closed(&f, k).unwrap();
            assert_eq!(pipe.matrix, closed.matrix, "k = {}", k);
        }
    }

    #[test]
    fn shear_like_matrix_matches_closed_form() {
        let f = map(vec![vec![2, 1], vec![1, 1]]);
        for k in 0..=2 {
            let pipe = pullback_matrix_pipeline(&f, k).unwrap();
            let closed = pullback_matrix_closed(&f, k).unwrap();
            assert_eq!(pipe.matrix, closed.matrix, "k = {}", k);
        }
    }

    #[test]
    fn oracle_equivalence_small_random_sample() {
        // the acceptance suite runs the full 50-matrix corpus; keep a
        // handful here for fast feedback
        let mut rng = SplitMix64::new(1001);
        let mut done = 0;
        while done < 5 {
            let psi = Matrix::from_fn(2, 2, |_, _| Int::from(rng.int_in(-3, 3)));
            if psi.det().unwrap().is_zero() {
                continue;
            }
            let f = MonomialMap::new(psi).unwrap();
            let pipeline = P1nPipeline::new(&f, 0).unwrap();
            for k in 0..=2 {
                let pipe = pipeline.pullback_matrix(k).unwrap();
                let closed = pullback_matrix_closed(&f, k).unwrap();
                assert_eq!(pipe.matrix, closed.matrix, "psi = {:?} k = {}", f.psi(), k);
            }
            done += 1;
        }
    }

    #[test]
    fn cremona_small_cases() {
        assert_eq!(cremona_degrees(1).unwrap(), binomials(1));
        assert_eq!(cremona_degrees(2).unwrap(), vec![
            Int::from(1),
            Int::from(2),
            Int::from(1)
        ]);
        assert_eq!(cremona_degrees(3).unwrap(), vec![
            Int::from(1),
            Int::from(3),
            Int::from(3),
            Int::from(1)
        ]);
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomials(0), vec![Int::from(1)]);
        assert_eq!(
            binomials(4),
            [1, 4, 6, 4, 1].map(Int::from).to_vec()
        );
        assert_eq!(
            binomials(5),
            [1, 5, 10, 10, 5, 1].map(Int::from).to_vec()
        );
    }
}
