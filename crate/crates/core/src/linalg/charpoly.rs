//! Characteristic polynomials with exact integer coefficients, plus the
//! univariate polynomial arithmetic needed to split off repeated roots
//! before any floating-point work happens.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Int;

use super::{LinalgError, Matrix};

/// Monic characteristic polynomial det(xI - A). Coefficients are stored
/// ascending: `coeffs[i]` multiplies `x^i`, `coeffs[n] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    coeffs: Vec<Int>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// det(A) recovered from the constant term: p(0) = (-1)^n det(A).
    pub fn det(&self) -> Int {
        let n = self.degree();
        if n & 1 == 0 {
            self.coeffs[0].clone()
        } else {
            -self.coeffs[0].clone()
        }
    }
}

/// Faddeev–LeVerrier: fraction-free in practice (every division by the step
/// index is exact), deterministic, and O(n^4) scalar ops, which is nothing
/// at the sizes this crate works at.
pub fn char_poly(a: &Matrix<Int>) -> Result<CharPoly, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = a.rows();
    let mut coeffs = vec![Int::zero(); n + 1];
    coeffs[n] = Int::one();
    let mut aux: Matrix<Int> = Matrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&aux)?;
        let mut tr = Int::zero();
        for i in 0..n {
            tr += am.at(i, i).clone();
        }
        let k_int = Int::from(k);
        let (c, rem) = (-tr).div_rem(&k_int);
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = c.clone();
        aux = am;
        for i in 0..n {
            let v = aux.at(i, i).clone() + c.clone();
            aux.set(i, i, v);
        }
    }
    Ok(CharPoly { coeffs })
}

// ---- integer polynomial helpers (ascending coefficient vectors) ----

pub(crate) fn poly_trim(p: &mut Vec<Int>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn poly_degree(p: &[Int]) -> usize {
    p.len() - 1
}

pub(crate) fn poly_is_zero(p: &[Int]) -> bool {
    p.iter().all(Zero::is_zero)
}

pub(crate) fn poly_derivative(p: &[Int]) -> Vec<Int> {
    if p.len() <= 1 {
        return vec![Int::zero()];
    }
    let mut out: Vec<Int> = (1..p.len()).map(|i| p[i].clone() * Int::from(i)).collect();
    poly_trim(&mut out);
    out
}

/// Divide by the content and normalize the leading sign to be positive.
pub(crate) fn poly_primitive(p: &[Int]) -> Vec<Int> {
    let mut out = p.to_vec();
    poly_trim(&mut out);
    if poly_is_zero(&out) {
        return vec![Int::zero()];
    }
    let mut content = Int::zero();
    for c in &out {
        content = content.gcd(c);
    }
    if out.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut out {
        *c = c.clone() / content.clone();
    }
    out
}

/// Pseudo-remainder of a by b (leading(b)^(da-db+1) * a mod b).
fn poly_pseudo_rem(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = poly_degree(b);
    let lb = b.last().unwrap().clone();
    while !poly_is_zero(&r) && poly_degree(&r) >= db {
        let dr = poly_degree(&r);
        let lr = r.last().unwrap().clone();
        // r <- lb * r - lr * x^(dr-db) * b
        let mut next = vec![Int::zero(); dr.max(db + dr - db) + 1];
        for (i, c) in r.iter().enumerate() {
            next[i] = lb.clone() * c.clone();
        }
        for (i, c) in b.iter().enumerate() {
            next[i + dr - db] -= lr.clone() * c.clone();
        }
        poly_trim(&mut next);
        r = next;
    }
    r
}

/// Primitive gcd of two integer polynomials (Euclid with pseudo-remainders).
pub(crate) fn poly_gcd(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut a = poly_primitive(a);
    let mut b = poly_primitive(b);
    if poly_is_zero(&a) {
        return b;
    }
    if poly_is_zero(&b) {
        return a;
    }
    if poly_degree(&a) < poly_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !poly_is_zero(&b) {
        let r = poly_pseudo_rem(&a, &b);
        a = b;
        b = poly_primitive(&r);
    }
    poly_primitive(&a)
}

/// Exact division of integer polynomials; panics if not divisible
/// (only called where Gauss's lemma guarantees divisibility).
pub(crate) fn poly_div_exact(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = poly_degree(b);
    let lb = b.last().unwrap().clone();
    if poly_is_zero(&r) {
        return vec![Int::zero()];
    }
    let da = poly_degree(&r);
    assert!(da >= db);
    let mut q = vec![Int::zero(); da - db + 1];
    for step in (0..=da - db).rev() {
        let lead = r[step + db].clone();
        if lead.is_zero() {
            continue;
        }
        let (c, rem) = lead.div_rem(&lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        q[step] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[step + i] -= c.clone() * bc.clone();
        }
    }
    assert!(poly_is_zero(&r), "inexact polynomial division");
    poly_trim(&mut q);
    q
}

/// Yun's square-free decomposition: returns pairs (factor, multiplicity)
/// with each factor primitive and square-free, p = prod factor^multiplicity
/// up to a rational constant.
pub(crate) fn square_free_decomposition(p: &[Int]) -> Vec<(Vec<Int>, usize)> {
    let p = poly_primitive(p);
    if poly_degree(&p) == 0 {
        return Vec::new();
    }
    let dp = poly_derivative(&p);
    let g = poly_gcd(&p, &dp);
    if poly_degree(&g) == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut c = poly_div_exact(&p, &g);
    let mut d = {
        let t = poly_div_exact(&dp, &g);
        poly_sub(&t, &poly_derivative(&c))
    };
    let mut i = 1;
    loop {
        let q = poly_gcd(&c, &d);
        if poly_degree(&q) > 0 {
            out.push((q.clone(), i));
        }
        c = poly_div_exact(&c, &q);
        if poly_degree(&c) == 0 {
            break;
        }
        let t = poly_div_exact(&d, &q);
        d = poly_sub(&t, &poly_derivative(&c));
        i += 1;
    }
    out
}

fn poly_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c.clone();
    }
    poly_trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bm(rows: Vec<Vec<i64>>) -> Matrix<Int> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap()
    }

    fn ip(v: Vec<i64>) -> Vec<Int> {
        v.into_iter().map(Int::from).collect()
    }

    #[test]
    fn char_poly_diagonal() {
        // x^2 - 5x + 6
        let p = char_poly(&bm(vec![vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(p.coeffs(), &ip(vec![6, -5, 1])[..]);
        assert_eq!(p.det(), Int::from(6));
    }

    #[test]
    fn char_poly_fibonacci() {
        // direct 2x2 expansion: x^2 - x - 1
        let p = char_poly(&bm(vec![vec![1, 1], vec![1, 0]])).unwrap();
        assert_eq!(p.coeffs(), &ip(vec![-1, -1, 1])[..]);
    }

    #[test]
    fn char_poly_identity_cubed() {
        // (x-1)^3 = x^3 - 3x^2 + 3x - 1
        let p = char_poly(&Matrix::identity(3)).unwrap();
        assert_eq!(p.coeffs(), &ip(vec![-1, 3, -3, 1])[..]);
        assert_eq!(p.det(), Int::one());
    }

    #[test]
    fn char_poly_constant_term_is_signed_det() {
        let a = bm(vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        let p = char_poly(&a).unwrap();
        assert_eq!(p.det(), a.det().unwrap());
        assert!(p.coeffs().last().unwrap().is_one());
    }

    #[test]
    fn gcd_and_division() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = ip(vec![2, -3, 0, 1]); // x^3 - 3x + 2
        let b = ip(vec![-3, 2, 1]); // x^2 + 2x - 3
        let g = poly_gcd(&a, &b);
        assert_eq!(g, ip(vec![-1, 1])); // x - 1
        let q = poly_div_exact(&a, &g);
        assert_eq!(q, ip(vec![-2, 1, 1])); // (x-1)(x+2) = x^2 + x - 2
    }

    #[test]
    fn square_free_of_cube() {
        // (x-1)^3
        let p = ip(vec![-1, 3, -3, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(ip(vec![-1, 1]), 3)]);
    }

    #[test]
    fn square_free_mixed() {
        // (x-1)^2 (x+2): x^3 - 3x + 2
        let p = ip(vec![2, -3, 0, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(ip(vec![2, 1]), 1), (ip(vec![-1, 1]), 2)]);
    }

    #[test]
    fn square_free_of_squarefree() {
        let p = ip(vec![-1, -1, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(p, 1)]);
    }
}
