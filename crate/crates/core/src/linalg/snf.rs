//! Smith normal form over a Euclidean-ish integer ring, and the lattice
//! computations built on it: kernels, span saturation, quotient indices.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::{Int, LatticeVector, Rat};

use super::{LinalgError, Matrix};

/// Decomposition `u * a * v = d` with `u`, `v` unimodular and `d` diagonal
/// with nonnegative entries satisfying `d[i] | d[i+1]`.
///
/// The inverses of the transforms are tracked alongside, since saturation
/// and integer solving need them and recovering them later costs another
/// elimination.
#[derive(Clone)]
pub struct Snf<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: Scalar + Integer> Snf<T> {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| !self.d.at(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<T> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// One integer solution of `a·x = b` for the decomposed matrix, or None
    /// if none exists over Z. Reusing the decomposition across many
    /// right-hand sides avoids repeated eliminations.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>, LinalgError> {
        let rows = self.d.rows();
        let cols = self.d.cols();
        if b.len() != rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let c = self.u.mul_vec(b)?;
        let mut y = vec![T::zero(); cols];
        let bound = rows.min(cols);
        for (i, ci) in c.iter().enumerate() {
            let d = if i < bound {
                self.d.at(i, i).clone()
            } else {
                T::zero()
            };
            if d.is_zero() {
                if !ci.is_zero() {
                    return Ok(None);
                }
            } else {
                let (q, r) = ci.div_rem(&d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
        }
        Ok(Some(self.v.mul_vec(&y)?))
    }
}

struct Worker<T> {
    m: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Scalar + Integer> Worker<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.m.cols() {
            let x = -self.m.at(i, c).clone();
            self.m.set(i, c, x);
        }
        for c in 0..self.u.cols() {
            let x = -self.u.at(i, c).clone();
            self.u.set(i, c, x);
        }
        for r in 0..self.u_inv.rows() {
            let x = -self.u_inv.at(r, i).clone();
            self.u_inv.set(r, i, x);
        }
    }

    /// rows (i, j) <- (s*row_i + t*row_j, p*row_i + q*row_j); s*q - t*p = 1.
    fn row_transform(&mut self, i: usize, j: usize, s: &T, t: &T, p: &T, q: &T) {
        debug_assert!((s.clone() * q.clone() - t.clone() * p.clone()).is_one());
        let apply = |mat: &mut Matrix<T>| {
            for c in 0..mat.cols() {
                let a = mat.at(i, c).clone();
                let b = mat.at(j, c).clone();
                mat.set(i, c, s.clone() * a.clone() + t.clone() * b.clone());
                mat.set(j, c, p.clone() * a + q.clone() * b);
            }
        };
        apply(&mut self.m);
        apply(&mut self.u);
        // inverse block is [[q, -t], [-p, s]]; right-multiplying mixes columns
        for r in 0..self.u_inv.rows() {
            let a = self.u_inv.at(r, i).clone();
            let b = self.u_inv.at(r, j).clone();
            self.u_inv.set(r, i, q.clone() * a.clone() - p.clone() * b.clone());
            self.u_inv.set(r, j, -t.clone() * a + s.clone() * b);
        }
    }

    /// cols (i, j) <- (s*col_i + t*col_j, p*col_i + q*col_j); s*q - t*p = 1.
    fn col_transform(&mut self, i: usize, j: usize, s: &T, t: &T, p: &T, q: &T) {
        debug_assert!((s.clone() * q.clone() - t.clone() * p.clone()).is_one());
        let apply = |mat: &mut Matrix<T>| {
            for r in 0..mat.rows() {
                let a = mat.at(r, i).clone();
                let b = mat.at(r, j).clone();
                mat.set(r, i, s.clone() * a.clone() + t.clone() * b.clone());
                mat.set(r, j, p.clone() * a + q.clone() * b);
            }
        };
        apply(&mut self.m);
        apply(&mut self.v);
        for c in 0..self.v_inv.cols() {
            let a = self.v_inv.at(i, c).clone();
            let b = self.v_inv.at(j, c).clone();
            self.v_inv.set(i, c, q.clone() * a.clone() - p.clone() * b.clone());
            self.v_inv.set(j, c, -t.clone() * a + s.clone() * b);
        }
    }

    /// row j -= q * row i
    fn row_sub(&mut self, j: usize, i: usize, q: &T) {
        for c in 0..self.m.cols() {
            let x = self.m.at(j, c).clone() - q.clone() * self.m.at(i, c).clone();
            self.m.set(j, c, x);
        }
        for c in 0..self.u.cols() {
            let x = self.u.at(j, c).clone() - q.clone() * self.u.at(i, c).clone();
            self.u.set(j, c, x);
        }
        for r in 0..self.u_inv.rows() {
            let x = self.u_inv.at(r, i).clone() + q.clone() * self.u_inv.at(r, j).clone();
            self.u_inv.set(r, i, x);
        }
    }

    /// col j -= q * col i
    fn col_sub(&mut self, j: usize, i: usize, q: &T) {
        for r in 0..self.m.rows() {
            let x = self.m.at(r, j).clone() - q.clone() * self.m.at(r, i).clone();
            self.m.set(r, j, x);
        }
        for r in 0..self.v.rows() {
            let x = self.v.at(r, j).clone() - q.clone() * self.v.at(r, i).clone();
            self.v.set(r, j, x);
        }
        for c in 0..self.v_inv.cols() {
            let x = self.v_inv.at(i, c).clone() + q.clone() * self.v_inv.at(j, c).clone();
            self.v_inv.set(i, c, x);
        }
    }

    /// Clear row t and column t (beyond the diagonal) with unimodular ops,
    /// pivoting on position (t, t), which must be nonzero on entry.
    fn clear_position(&mut self, t: usize) {
        loop {
            for i in t + 1..self.m.rows() {
                if self.m.at(i, t).is_zero() {
                    continue;
                }
                let a = self.m.at(t, t).clone();
                let b = self.m.at(i, t).clone();
                let (q, r) = b.div_rem(&a);
                if r.is_zero() {
                    self.row_sub(i, t, &q);
                } else {
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let p = -(b.clone() / g.clone());
                    let qq = a.clone() / g.clone();
                    self.row_transform(t, i, &x, &y, &p, &qq);
                }
            }
            for j in t + 1..self.m.cols() {
                if self.m.at(t, j).is_zero() {
                    continue;
                }
                let a = self.m.at(t, t).clone();
                let b = self.m.at(t, j).clone();
                let (q, r) = b.div_rem(&a);
                if r.is_zero() {
                    self.col_sub(j, t, &q);
                } else {
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let p = -(b.clone() / g.clone());
                    let qq = a.clone() / g.clone();
                    self.col_transform(t, j, &x, &y, &p, &qq);
                }
            }
            // column ops can refill column t below the pivot; |m[t][t]| strictly
            // shrinks whenever that happens, so this terminates
            let col_clear = (t + 1..self.m.rows()).all(|i| self.m.at(i, t).is_zero());
            let row_clear = (t + 1..self.m.cols()).all(|j| self.m.at(t, j).is_zero());
            if col_clear && row_clear {
                break;
            }
        }
    }
}

/// Smith normal form. Total on arbitrary integer matrices.
pub fn smith_normal_form<T: Scalar + Integer>(a: &Matrix<T>) -> Snf<T> {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Worker {
        m: a.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };
    let bound = rows.min(cols);
    let mut t = 0;
    while t < bound {
        // smallest-magnitude nonzero pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.m.at(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    Some((pi, pj)) if w.m.at(*pi, *pj).abs() <= w.m.at(i, j).abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        w.clear_position(t);
        t += 1;
    }
    let rank = t;
    // nonnegative diagonal
    for i in 0..rank {
        if w.m.at(i, i).is_negative() {
            w.negate_row(i);
        }
    }
    // enforce the divisibility chain
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let a_ = w.m.at(i, i).clone();
            let b_ = w.m.at(i + 1, i + 1).clone();
            if !b_.mod_floor(&a_).is_zero() {
                // fold d[i+1] into column i, then re-clear the 2x2 block
                let one = T::one();
                w.col_sub(i, i + 1, &-one);
                w.clear_position(i);
                for j in [i, i + 1] {
                    if w.m.at(j, j).is_negative() {
                        w.negate_row(j);
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Snf {
        u: w.u,
        d: w.m,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// `[Z^n : span_Z(gens_a ∪ gens_b)]`, or `Infinite` when the span has
/// rank < n. The index is the product of the nonzero Smith diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

pub fn lattice_index_sum(
    gens_a: &[LatticeVector],
    gens_b: &[LatticeVector],
    n: usize,
) -> Result<LatticeIndex, LinalgError> {
    let all: Vec<LatticeVector> = gens_a.iter().chain(gens_b.iter()).cloned().collect();
    for v in &all {
        if v.len() != n {
            return Err(LinalgError::DimensionMismatch);
        }
    }
    let mat = Matrix::from_columns(n, &all)?;
    let snf = smith_normal_form(&mat);
    if snf.rank() < n {
        return Ok(LatticeIndex::Infinite);
    }
    let mut idx = Int::one();
    for d in snf.diagonal() {
        if !d.is_zero() {
            idx *= d;
        }
    }
    Ok(LatticeIndex::Finite(idx))
}

/// Saturated basis of the kernel of `a` (integer column vectors x with a·x = 0).
pub fn kernel_basis(a: &Matrix<Int>) -> Vec<LatticeVector> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|i| snf.v.column(i)).collect()
}

/// Saturated basis of `span_R(vectors) ∩ Z^n`: the lattice of all integer
/// points in the real span. Returned basis has `rank` elements.
pub fn saturate_span(vectors: &[LatticeVector], n: usize) -> Result<Vec<LatticeVector>, LinalgError> {
    for v in vectors {
        if v.len() != n {
            return Err(LinalgError::DimensionMismatch);
        }
    }
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let mat = Matrix::from_columns(n, vectors)?;
    let snf = smith_normal_form(&mat);
    let rank = snf.rank();
    Ok((0..rank).map(|i| snf.u_inv.column(i)).collect())
}

/// One integer solution of `a·x = b`, or None if none exists over Z.
pub fn solve_integer(a: &Matrix<Int>, b: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
    smith_normal_form(a).solve(b)
}

/// Unique rational solution of the square system `a·x = b`, or None if
/// `det a = 0`. Fraction-free forward elimination, rational back-substitution.
pub fn solve_int_to_rat(a: &Matrix<Int>, b: &[Int]) -> Result<Option<Vec<Rat>>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = a.rows();
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut m = Matrix::from_fn(n, n + 1, |r, c| {
        if c < n {
            a.at(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.at(i, k).is_zero()) {
                Some(i) => m.swap_rows(k, i),
                None => return Ok(None),
            }
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = m.at(k, k).clone() * m.at(i, j).clone()
                    - m.at(i, k).clone() * m.at(k, j).clone();
                m.set(i, j, num / prev.clone());
            }
            m.set(i, k, Int::zero());
        }
        prev = m.at(k, k).clone();
    }
    if m.at(n - 1, n - 1).is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rat::from_integer(m.at(i, n).clone());
        for (j, xj) in x.iter().enumerate().take(n).skip(i + 1) {
            acc -= Rat::from_integer(m.at(i, j).clone()) * xj.clone();
        }
        x[i] = acc / Rat::from_integer(m.at(i, i).clone());
    }
    Ok(Some(x))
}
