//! Minors, k-th compound (exterior power) matrices, and the
//! complementary-minor identity relating minors of a matrix and its inverse.

use num_traits::{Signed, Zero};

use crate::{Int, Rat};

use super::{LinalgError, Matrix};

/// A pair of equal-size index subsets (rows `alpha`, columns `beta`),
/// stored 0-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSetPair {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub n: usize,
}

impl IndexSetPair {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>, n: usize) -> Result<Self, LinalgError> {
        if alpha.len() != beta.len() {
            return Err(LinalgError::SizeMismatch);
        }
        for set in [&alpha, &beta] {
            if !set.windows(2).all(|w| w[0] < w[1]) {
                return Err(LinalgError::BadIndexSet);
            }
            if set.iter().any(|&i| i >= n) {
                return Err(LinalgError::BadIndexSet);
            }
        }
        Ok(IndexSetPair { alpha, beta, n })
    }

    pub fn alpha_complement(&self) -> Vec<usize> {
        subset_complement(&self.alpha, self.n)
    }

    pub fn beta_complement(&self) -> Vec<usize> {
        subset_complement(&self.beta, self.n)
    }
}

/// Complement of a strictly increasing subset of `{0, .., n-1}`.
pub fn subset_complement(set: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - set.len());
    let mut it = set.iter().peekable();
    for i in 0..n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

/// All k-element subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=n.saturating_sub(remaining) {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut current, &mut out);
    }
    out
}

/// Determinant of the submatrix selected by `rows` × `cols`.
/// The empty minor is 1 by convention.
pub fn minor(a: &Matrix<Int>, rows: &[usize], cols: &[usize]) -> Result<Int, LinalgError> {
    if rows.len() != cols.len() {
        return Err(LinalgError::SizeMismatch);
    }
    if rows.iter().any(|&r| r >= a.rows()) || cols.iter().any(|&c| c >= a.cols()) {
        return Err(LinalgError::BadIndexSet);
    }
    a.select(rows, cols).det()
}

/// The k-th compound matrix: entry at (row-set R, col-set S) is the minor
/// of `a` on R × S, with k-subsets ordered lexicographically. Represents
/// the k-th exterior power of the linear map.
pub fn compound_matrix(a: &Matrix<Int>, k: usize) -> Result<Matrix<Int>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = a.rows();
    if k > n {
        return Err(LinalgError::KOutOfRange { k, n });
    }
    let subsets = k_subsets(n, k);
    let size = subsets.len();
    let mut entries = Vec::with_capacity(size * size);
    for r in &subsets {
        for s in &subsets {
            entries.push(minor(a, r, s)?);
        }
    }
    Matrix::new(size, size, entries)
}

/// Both sides of the identity |det(a)·det((a^{-1})_{α,β})| = |det(a_{β',α'})|,
/// computed independently: the left through the exact rational inverse, the
/// right as an integer minor. Returns the two absolute values for the caller
/// to compare.
pub fn complementary_minor(
    a: &Matrix<Int>,
    pair: &IndexSetPair,
) -> Result<(Rat, Rat), LinalgError> {
    if !a.is_square() || a.rows() != pair.n {
        return Err(LinalgError::DimensionMismatch);
    }
    let det = a.det()?;
    if det.is_zero() {
        return Err(LinalgError::Singular);
    }
    let inv = rational_inverse(a)?;
    let sub = inv.select(&pair.alpha, &pair.beta);
    let lhs = (Rat::from_integer(det) * sub.det()?).abs();
    let rhs = Rat::from_integer(
        minor(a, &pair.beta_complement(), &pair.alpha_complement())?.abs(),
    );
    Ok((lhs, rhs))
}

/// Exact inverse over the rationals via Gauss-Jordan.
pub fn rational_inverse(a: &Matrix<Int>) -> Result<Matrix<Rat>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = a.rows();
    let mut m = a.map(|x| Rat::from_integer(x.clone()));
    let mut inv: Matrix<Rat> = Matrix::identity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m.at(i, k).is_zero());
        let Some(p) = pivot else {
            return Err(LinalgError::Singular);
        };
        m.swap_rows(k, p);
        inv.swap_rows(k, p);
        let d = m.at(k, k).clone();
        for c in 0..n {
            m.set(k, c, m.at(k, c).clone() / d.clone());
            inv.set(k, c, inv.at(k, c).clone() / d.clone());
        }
        for i in 0..n {
            if i == k || m.at(i, k).is_zero() {
                continue;
            }
            let f = m.at(i, k).clone();
            for c in 0..n {
                let mv = m.at(i, c).clone() - f.clone() * m.at(k, c).clone();
                m.set(i, c, mv);
                let iv = inv.at(i, c).clone() - f.clone() * inv.at(k, c).clone();
                inv.set(i, c, iv);
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use num_bigint::BigInt;
    use num_traits::One;

    fn bm(rows: Vec<Vec<i64>>) -> Matrix<Int> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn subsets_lex_order() {
        assert_eq!(
            k_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn complement() {
        assert_eq!(subset_complement(&[0, 2], 4), vec![1, 3]);
        assert_eq!(subset_complement(&[], 3), vec![0, 1, 2]);
        assert_eq!(subset_complement(&[0, 1, 2], 3), Vec::<usize>::new());
    }

    #[test]
    fn minor_cases() {
        let d = bm(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(minor(&d, &[0], &[0]).unwrap(), Int::from(2));
        let a = bm(vec![vec![1, 2], vec![3, 4]]);
        // cofactor expansion oracle: 1*4 - 2*3 = -2
        assert_eq!(minor(&a, &[0, 1], &[0, 1]).unwrap(), Int::from(-2));
        assert_eq!(minor(&a, &[], &[]).unwrap(), Int::one());
    }

    #[test]
    fn compound_edge_cases() {
        let d = bm(vec![vec![2, 0], vec![0, 3]]);
        let top = compound_matrix(&d, 2).unwrap();
        assert_eq!(top.rows(), 1);
        assert_eq!(*top.at(0, 0), Int::from(6));

        let id3: Matrix<Int> = Matrix::identity(3);
        for k in 0..=3 {
            let c = compound_matrix(&id3, k).unwrap();
            assert_eq!(c, Matrix::identity(c.rows()));
        }

        let f = bm(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(compound_matrix(&f, 1).unwrap(), f);
        assert_eq!(*compound_matrix(&f, 0).unwrap().at(0, 0), Int::one());
    }

    #[test]
    fn compound_multiplicative() {
        // compound(AB, k) = compound(A, k) * compound(B, k), exactly
        let mut rng = SplitMix64::new(7);
        for _ in 0..40 {
            let n = rng.int_in(1, 4) as usize;
            let a = Matrix::from_fn(n, n, |_, _| Int::from(rng.int_in(-4, 4)));
            let b = Matrix::from_fn(n, n, |_, _| Int::from(rng.int_in(-4, 4)));
            let ab = a.mul(&b).unwrap();
            for k in 0..=n {
                let lhs = compound_matrix(&ab, k).unwrap();
                let rhs = compound_matrix(&a, k)
                    .unwrap()
                    .mul(&compound_matrix(&b, k).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn complementary_minor_identity_cases() {
        let id: Matrix<Int> = Matrix::identity(2);
        let pair = IndexSetPair::new(vec![0], vec![0], 2).unwrap();
        let (l, r) = complementary_minor(&id, &pair).unwrap();
        assert_eq!(l, Rat::one());
        assert_eq!(r, Rat::one());

        // diag(2,3), alpha = beta = {first}: |6 * 1/2| = |3|
        let d = bm(vec![vec![2, 0], vec![0, 3]]);
        let (l, r) = complementary_minor(&d, &pair).unwrap();
        assert_eq!(l, Rat::from_integer(Int::from(3)));
        assert_eq!(r, Rat::from_integer(Int::from(3)));

        // off-diagonal selection
        let a = bm(vec![vec![2, 1], vec![1, 1]]);
        let pair = IndexSetPair::new(vec![0], vec![1], 2).unwrap();
        let (l, r) = complementary_minor(&a, &pair).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn complementary_minor_all_pairs_random() {
        let mut rng = SplitMix64::new(31);
        let mut done = 0;
        while done < 30 {
            let n = rng.int_in(1, 4) as usize;
            let a = Matrix::from_fn(n, n, |_, _| Int::from(rng.int_in(-5, 5)));
            if a.det().unwrap().is_zero() {
                continue;
            }
            for k in 0..=n {
                for alpha in k_subsets(n, k) {
                    for beta in k_subsets(n, k) {
                        let pair = IndexSetPair::new(alpha.clone(), beta, n).unwrap();
                        let (l, r) = complementary_minor(&a, &pair).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
            done += 1;
        }
    }

    #[test]
    fn singular_rejected() {
        let s = bm(vec![vec![1, 1], vec![1, 1]]);
        let pair = IndexSetPair::new(vec![0], vec![0], 2).unwrap();
        assert_eq!(complementary_minor(&s, &pair), Err(LinalgError::Singular));
    }

    #[test]
    fn inverse_round_trip() {
        let a = bm(vec![vec![2, 1], vec![1, 1]]);
        let inv = rational_inverse(&a).unwrap();
        let prod = a.map(|x| Rat::from_integer(x.clone())).mul(&inv).unwrap();
        assert_eq!(prod, Matrix::identity(2));
    }
}
