//! Small helpers on lattice vectors (`Vec<Int>`) and integer covectors.

use num_integer::Integer;
use num_traits::Zero;

use crate::{Int, LatticeVector};

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn neg(a: &[Int]) -> LatticeVector {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn from_i64(v: &[i64]) -> LatticeVector {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Divide by the gcd of the coordinates. The zero vector stays zero;
/// the sign pattern is preserved (gcd is taken positive).
pub fn primitive(a: &[Int]) -> LatticeVector {
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

/// Standard basis vector e_i of Z^n.
pub fn unit(n: usize, i: usize) -> LatticeVector {
    let mut v = vec![Int::zero(); n];
    v[i] = Int::from(1);
    v
}

pub fn add(a: &[Int], b: &[Int]) -> LatticeVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sum(vectors: &[LatticeVector], n: usize) -> LatticeVector {
    let mut acc = vec![Int::zero(); n];
    for v in vectors {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_reduces_gcd() {
        assert_eq!(primitive(&from_i64(&[2, 4, -6])), from_i64(&[1, 2, -3]));
        assert_eq!(primitive(&from_i64(&[0, 0])), from_i64(&[0, 0]));
        assert_eq!(primitive(&from_i64(&[-3, 0])), from_i64(&[-1, 0]));
    }

    #[test]
    fn dot_product() {
        assert_eq!(dot(&from_i64(&[1, 2]), &from_i64(&[3, -1])), Int::from(1));
    }
}
