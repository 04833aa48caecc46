//! The closed-form pullback matrix on (P^1)^n: entry (alpha, beta) is the
//! absolute complementary minor |det(psi_{beta', alpha'})|.

use num_traits::Signed;

use crate::linalg::{k_subsets, minor, subset_complement};

use super::{DynError, MonomialMap, PullbackMatrix};

/// f* on A^k((P^1)^n) in the basis {c_alpha : |alpha| = n-k}: the
/// (alpha, beta) entry is |det(psi_{beta', alpha'})|. k = 0 gives [1] and
/// k = n gives [|det psi|] (the topological degree).
pub fn pullback_matrix_closed(map: &MonomialMap, k: usize) -> Result<PullbackMatrix, DynError> {
    let n = map.rank();
    if k > n {
        return Err(DynError::KOutOfRange { k, n });
    }
    let subsets = k_subsets(n, n - k);
    let size = subsets.len();
    let mut entries = Vec::with_capacity(size * size);
    for alpha in &subsets {
        let alpha_c = subset_complement(alpha, n);
        for beta in &subsets {
            let beta_c = subset_complement(beta, n);
            entries.push(minor(map.psi(), &beta_c, &alpha_c)?.abs());
        }
    }
    Ok(PullbackMatrix {
        k,
        subsets,
        matrix: crate::linalg::Matrix::new(size, size, entries)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::Int;

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
    fn identity_map_gives_identity_matrices() {
        let id = map(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        for k in 0..=3 {
            let p = pullback_matrix_closed(&id, k).unwrap();
            assert_eq!(p.matrix, Matrix::identity(p.size()));
        }
    }

    #[test]
    fn diag_2_3_divisor_pullback() {
        // divisor-pullback oracle on (P^1)^2: substituting (x^2, y^3) into
        // the coordinate divisors {x = 0}, {y = 0} multiplies them by the
        // complementary exponent: f*c_{1} = 3 c_{1}, f*c_{2} = 2 c_{2}
        let f = map(vec![vec![2, 0], vec![0, 3]]);
        let p = pullback_matrix_closed(&f, 1).unwrap();
        assert_eq!(*p.matrix.at(0, 0), Int::from(3));
        assert_eq!(*p.matrix.at(0, 1), Int::from(0));
        assert_eq!(*p.matrix.at(1, 0), Int::from(0));
        assert_eq!(*p.matrix.at(1, 1), Int::from(2));
    }

    #[test]
    fn top_k_is_topological_degree() {
        let f = map(vec![vec![2, 1], vec![1, 1]]);
        let p = pullback_matrix_closed(&f, 2).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(*p.matrix.at(0, 0), Int::from(1)); // |det| = 1
        let g = map(vec![vec![3, 1], vec![1, -2]]);
        let p = pullback_matrix_closed(&g, 2).unwrap();
        assert_eq!(*p.matrix.at(0, 0), Int::from(7));
    }

    #[test]
    fn k0_is_one() {
        let f = map(vec![vec![5, 2], vec![2, 1]]);
        let p = pullback_matrix_closed(&f, 0).unwrap();
        assert_eq!(p.size(), 1);
        assert_eq!(*p.matrix.at(0, 0), Int::from(1));
    }

    #[test]
    fn entries_are_absolute_transposed_minors() {
        let f = map(vec![vec![2, 1], vec![1, 1]]);
        // k = 1, subsets {0}, {1}: entry(a, b) = |psi_{b', a'}|
        let p = pullback_matrix_closed(&f, 1).unwrap();
        // entry({0},{0}) = |psi_{ {1},{1} }| = 1, entry({0},{1}) = |psi_{ {0},{1} }| = 1
        assert_eq!(*p.matrix.at(0, 0), Int::from(1));
        assert_eq!(*p.matrix.at(0, 1), Int::from(1));
        assert_eq!(*p.matrix.at(1, 0), Int::from(1));
        assert_eq!(*p.matrix.at(1, 1), Int::from(2));
    }
}
