//! Standard fans: the product of projective lines and projective space.

use crate::lattice::unit;
use crate::{Int, LatticeVector};

use super::cone::make_cone;
use super::{Fan, FanError};

/// The fan of (P^1)^n: rays ±e_1, .., ±e_n; k-dimensional cones indexed by
/// a k-subset of axes and a sign for each. Maximal cones are the 2^n
/// orthants; the fan has 3^n cones in total.
pub fn fan_p1n(n: usize) -> Result<Fan, FanError> {
    assert!(n >= 1, "rank must be at least 1");
    let mut maximal = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let gens: Vec<LatticeVector> = (0..n)
            .map(|i| {
                let mut e = unit(n, i);
                if mask & (1 << i) != 0 {
                    e[i] = -e[i].clone();
                }
                e
            })
            .collect();
        maximal.push(make_cone(n, &gens)?);
    }
    Fan::from_maximal(n, maximal)
}

/// The fan of P^n: rays e_0 = -(e_1 + .. + e_n), e_1, .., e_n; cones are
/// generated by the proper subsets of the rays; 2^{n+1} - 1 cones in total.
pub fn fan_pn(n: usize) -> Result<Fan, FanError> {
    assert!(n >= 1, "rank must be at least 1");
    let mut rays: Vec<LatticeVector> = Vec::with_capacity(n + 1);
    rays.push(vec![-Int::from(1); n]);
    for i in 0..n {
        rays.push(unit(n, i));
    }
    let mut maximal = Vec::with_capacity(n + 1);
    for omit in 0..=n {
        let gens: Vec<LatticeVector> = (0..=n)
            .filter(|&i| i != omit)
            .map(|i| rays[i].clone())
            .collect();
        maximal.push(make_cone(n, &gens)?);
    }
    Fan::from_maximal(n, maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::from_i64;

    #[test]
    fn p1n_counts() {
        for n in 1..=3 {
            let fan = fan_p1n(n).unwrap();
            assert_eq!(fan.len(), 3usize.pow(n as u32), "n = {}", n);
            assert!(fan.is_complete());
            assert!(fan.validate().ok());
        }
    }

    #[test]
    fn p1n_2_has_four_quadrants() {
        let fan = fan_p1n(2).unwrap();
        assert_eq!(fan.cones_of_dim(2).count(), 4);
        assert_eq!(fan.cones_of_dim(1).count(), 4);
        assert_eq!(fan.cones_of_dim(0).count(), 1);
    }

    #[test]
    fn pn_counts() {
        for n in 1..=4 {
            let fan = fan_pn(n).unwrap();
            assert_eq!(fan.len(), (1 << (n + 1)) - 1, "n = {}", n);
            assert!(fan.is_complete());
            assert_eq!(fan.maximal_cones().count(), n + 1);
        }
        assert!(fan_pn(2).unwrap().validate().ok());
        assert!(fan_pn(3).unwrap().validate().ok());
    }

    #[test]
    fn p1_equals_pn_1() {
        let a = fan_p1n(1).unwrap();
        let b = fan_pn(1).unwrap();
        assert_eq!(a.len(), b.len());
        for c in a.cones() {
            assert!(b.contains_key(c.key()));
        }
    }

    #[test]
    fn p2_maximal_cones_are_quadrant_like() {
        let fan = fan_pn(2).unwrap();
        let maximal: Vec<_> = fan.maximal_cones().collect();
        assert_eq!(maximal.len(), 3);
        for c in maximal {
            assert_eq!(c.dim(), 2);
            assert!(c.is_simplicial());
        }
        assert!(fan
            .get(&vec![from_i64(&[0, 1]), from_i64(&[1, 0])])
            .is_some());
    }
}
