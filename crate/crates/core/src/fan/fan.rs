//! Fans: face-closed collections of cones, indexed by dimension, with
//! completeness detection, axiom validation, and the quotient-lattice
//! normal vectors n_{sigma,tau} used by the Minkowski-weight relations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::{self, dot};
use crate::linalg::{kernel_basis, solve_integer, Matrix};
use crate::rng::SplitMix64;
use crate::{Int, LatticeVector};

use super::cone::{cone_intersection, Cone, ConeKey};
use super::FanError;

/// A finite, face-closed collection of cones. Cones are stored sorted by
/// (dimension, canonical key) so all iteration is deterministic.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
    index: HashMap<ConeKey, usize>,
    by_dim: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    complete: bool,
}

impl Fan {
    /// Build a fan as the face closure of the given cones, then detect
    /// completeness (sampled coverage plus exact facet pairing).
    pub fn from_maximal(rank: usize, maximal: Vec<Cone>) -> Result<Fan, FanError> {
        let mut cones: Vec<Cone> = Vec::new();
        let mut seen: BTreeSet<ConeKey> = BTreeSet::new();
        let mut non_maximal: BTreeSet<ConeKey> = BTreeSet::new();
        let mut queue: Vec<Cone> = maximal;
        for c in &queue {
            if c.rank() != rank {
                return Err(FanError::DimensionMismatch);
            }
        }
        let mut queued: BTreeSet<ConeKey> = queue.iter().map(|c| c.key().clone()).collect();
        while let Some(c) = queue.pop() {
            if !seen.insert(c.key().clone()) {
                continue;
            }
            // the facet generator subsets are exactly the facet keys, so
            // faces shared between cones are built once
            for set in c.facet_generator_sets() {
                non_maximal.insert(set.clone());
                if !seen.contains(&set) && queued.insert(set.clone()) {
                    queue.push(super::cone::make_cone(rank, &set)?);
                }
            }
            cones.push(c);
        }
        // also mark input cones that are faces of other input cones
        for c in &cones {
            for other in &cones {
                if c.key() != other.key() && c.dim() < other.dim() && other.contains_cone(c) {
                    non_maximal.insert(c.key().clone());
                }
            }
        }
        Ok(Fan::assemble(rank, cones, &non_maximal))
    }

    /// Build without face closure. Used to represent possibly broken input
    /// that `validate` should report on.
    pub fn from_cones_unchecked(rank: usize, cones: Vec<Cone>) -> Fan {
        let mut non_maximal: BTreeSet<ConeKey> = BTreeSet::new();
        for c in &cones {
            for other in &cones {
                if c.key() != other.key() && other.contains_cone(c) && c.dim() <= other.dim() {
                    non_maximal.insert(c.key().clone());
                }
            }
        }
        Fan::assemble(rank, cones, &non_maximal)
    }

    fn assemble(rank: usize, mut cones: Vec<Cone>, non_maximal: &BTreeSet<ConeKey>) -> Fan {
        cones.sort_by(|a, b| (a.dim(), a.key()).cmp(&(b.dim(), b.key())));
        cones.dedup_by(|a, b| a.key() == b.key());
        let mut index = HashMap::new();
        let mut by_dim = vec![Vec::new(); rank + 1];
        for (i, c) in cones.iter().enumerate() {
            index.insert(c.key().clone(), i);
            by_dim[c.dim()].push(i);
        }
        let maximal: Vec<usize> = cones
            .iter()
            .enumerate()
            .filter(|(_, c)| !non_maximal.contains(c.key()))
            .map(|(i, _)| i)
            .collect();
        let mut fan = Fan {
            rank,
            cones,
            index,
            by_dim,
            maximal,
            complete: false,
        };
        fan.complete = fan.completeness_check().is_empty();
        fan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn get(&self, key: &ConeKey) -> Option<&Cone> {
        self.index.get(key).map(|&i| &self.cones[i])
    }

    pub fn contains_key(&self, key: &ConeKey) -> bool {
        self.index.contains_key(key)
    }

    pub fn cones_of_dim(&self, d: usize) -> impl Iterator<Item = &Cone> {
        self.by_dim
            .get(d)
            .into_iter()
            .flatten()
            .map(move |&i| &self.cones[i])
    }

    /// Cones of codimension k (dimension rank - k).
    pub fn cones_of_codim(&self, k: usize) -> impl Iterator<Item = &Cone> {
        self.cones_of_dim(self.rank - k)
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(move |&i| &self.cones[i])
    }

    /// The smallest cone containing all given points, if any cone does.
    /// Scans by increasing dimension; in a valid fan the minimizer is unique.
    pub fn smallest_containing_cone(&self, points: &[LatticeVector]) -> Option<&Cone> {
        for d in 0..=self.rank {
            for &i in &self.by_dim[d] {
                if self.cones[i].contains_all(points) {
                    return Some(&self.cones[i]);
                }
            }
        }
        None
    }

    /// Violations of the completeness criteria (empty = complete):
    /// every maximal cone full-dimensional, every (rank-1)-cone a facet of
    /// exactly two full-dimensional cones, and a seeded sphere sample of
    /// 10 * 3^rank directions all covered.
    fn completeness_check(&self) -> Vec<String> {
        let mut violations = Vec::new();
        let n = self.rank;
        if self.by_dim[n].is_empty() {
            violations.push("no full-dimensional cones".to_string());
            return violations;
        }
        for &i in &self.maximal {
            if self.cones[i].dim() != n {
                violations.push(format!(
                    "maximal cone {:?} has dimension {} < rank",
                    self.cones[i].key(),
                    self.cones[i].dim()
                ));
            }
        }
        // exact facet pairing
        let mut counts: BTreeMap<ConeKey, usize> = BTreeMap::new();
        for &i in &self.by_dim[n] {
            if let Ok(facets) = self.cones[i].facets() {
                for f in facets {
                    *counts.entry(f.key().clone()).or_insert(0) += 1;
                }
            }
        }
        if n > 0 {
            for &i in &self.by_dim[n - 1] {
                let c = counts.get(self.cones[i].key()).copied().unwrap_or(0);
                if c != 2 {
                    violations.push(format!(
                        "codim-1 cone {:?} is a facet of {} full-dimensional cones (want 2)",
                        self.cones[i].key(),
                        c
                    ));
                }
            }
        }
        // sampled coverage
        let mut rng = SplitMix64::new(0x5EED);
        let samples = 10 * 3usize.pow(n.min(8) as u32);
        let mut missed = 0usize;
        for _ in 0..samples {
            let p: LatticeVector = (0..n).map(|_| Int::from(rng.int_in(-1000, 1000))).collect();
            if lattice::is_zero(&p) {
                continue;
            }
            let covered = self.by_dim[n].iter().any(|&i| self.cones[i].contains(&p));
            if !covered {
                missed += 1;
            }
        }
        if missed > 0 {
            violations.push(format!("{missed} sampled directions lie in no cone"));
        }
        violations
    }

    /// Check the fan axioms and report every violation found.
    pub fn validate(&self) -> FanReport {
        let mut violations = Vec::new();
        // face closure
        for c in &self.cones {
            match c.facets() {
                Ok(facets) => {
                    for f in facets {
                        if !self.contains_key(f.key()) {
                            violations.push(format!(
                                "face {:?} of cone {:?} is missing",
                                f.key(),
                                c.key()
                            ));
                        }
                    }
                }
                Err(e) => violations.push(format!("cone {:?}: {}", c.key(), e)),
            }
        }
        // pairwise intersections; with face closure intact, checking maximal
        // pairs is equivalent, so cap the quadratic sweep on large fans
        let idx: Vec<usize> = if self.cones.len() <= 60 {
            (0..self.cones.len()).collect()
        } else {
            self.maximal.clone()
        };
        let mut face_keys: HashMap<ConeKey, BTreeSet<ConeKey>> = HashMap::new();
        let mut faces_of = |c: &Cone| -> BTreeSet<ConeKey> {
            face_keys
                .entry(c.key().clone())
                .or_insert_with(|| {
                    c.faces()
                        .map(|fs| fs.into_iter().map(|f| f.key().clone()).collect())
                        .unwrap_or_default()
                })
                .clone()
        };
        for (a_pos, &ai) in idx.iter().enumerate() {
            for &bi in idx.iter().skip(a_pos + 1) {
                let a = &self.cones[ai];
                let b = &self.cones[bi];
                match cone_intersection(a, b) {
                    Ok(i) => {
                        let in_fan = self.contains_key(i.key());
                        let face_a = faces_of(a).contains(i.key());
                        let face_b = faces_of(b).contains(i.key());
                        if !(in_fan && face_a && face_b) {
                            violations.push(format!(
                                "intersection of {:?} and {:?} is not a common face",
                                a.key(),
                                b.key()
                            ));
                        }
                    }
                    Err(e) => violations.push(format!(
                        "intersection of {:?} and {:?} failed: {}",
                        a.key(),
                        b.key(),
                        e
                    )),
                }
            }
        }
        let checked_completeness = self.complete;
        if self.complete {
            violations.extend(self.completeness_check());
        }
        FanReport {
            violations,
            checked_completeness,
        }
    }
}

/// Outcome of `Fan::validate`.
#[derive(Clone, Debug)]
pub struct FanReport {
    pub violations: Vec<String>,
    pub checked_completeness: bool,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A nested pair tau ⊂ sigma with dim(sigma) = dim(tau) + 1.
#[derive(Clone, Debug)]
pub struct ConePair {
    pub sigma: Cone,
    pub tau: Cone,
}

impl ConePair {
    pub fn new(sigma: Cone, tau: Cone) -> Result<ConePair, FanError> {
        if sigma.rank() != tau.rank() {
            return Err(FanError::DimensionMismatch);
        }
        if sigma.dim() != tau.dim() + 1 {
            return Err(FanError::DimensionGap);
        }
        if !sigma.contains_cone(&tau) {
            return Err(FanError::NotAFace);
        }
        Ok(ConePair { sigma, tau })
    }
}

/// A lattice point of sigma whose class generates the rank-1 quotient
/// N_sigma / N_tau, where N_c is the saturated sublattice spanned by c.
/// The sign is fixed by membership in sigma.
pub fn lattice_normal(pair: &ConePair) -> Result<LatticeVector, FanError> {
    let sigma = &pair.sigma;
    let tau = &pair.tau;
    let n = sigma.rank();
    let d = tau.dim();

    let sigma_basis = crate::linalg::saturate_span(sigma.generators(), n)?;
    debug_assert_eq!(sigma_basis.len(), d + 1);
    let basis_mat = Matrix::from_columns(n, &sigma_basis)?;

    // tau generators in sigma-span coordinates
    let mut tau_coords = Vec::with_capacity(tau.generators().len());
    for g in tau.generators() {
        let y = solve_integer(&basis_mat, g)?.ok_or(FanError::NotAFace)?;
        tau_coords.push(y);
    }

    // primitive covector on Z^{d+1} vanishing on tau
    let phi = if tau_coords.is_empty() {
        vec![Int::from(1)]
    } else {
        let kern = kernel_basis(&Matrix::from_rows(tau_coords)?);
        if kern.len() != 1 {
            return Err(FanError::DimensionGap);
        }
        lattice::primitive(&kern[0])
    };

    // orient positively on sigma
    let mut phi = phi;
    let mut oriented = false;
    for g in sigma.generators() {
        let y = solve_integer(&basis_mat, g)?.ok_or(FanError::NotAFace)?;
        let level = dot(&phi, &y);
        if !level.is_zero() {
            if level.is_negative() {
                phi = lattice::neg(&phi);
            }
            oriented = true;
            break;
        }
    }
    if !oriented {
        return Err(FanError::DimensionGap);
    }

    // a lattice point at level 1, in sigma-span coordinates
    let phi_mat = Matrix::from_rows(vec![phi])?;
    let x = solve_integer(&phi_mat, &[Int::from(1)])?
        .expect("primitive covector attains 1 on the lattice");
    let x_ambient = basis_mat.mul_vec(&x)?;

    // push into sigma by adding a multiple of an interior point of tau
    let z = tau.interior_point();
    let mut shift = Int::zero();
    for u in sigma.facet_normals() {
        let a = dot(u, &x_ambient);
        let b = dot(u, &z);
        if b.is_zero() {
            if a.is_negative() {
                return Err(FanError::NotAFace);
            }
        } else if a.is_negative() {
            // smallest m with a + m b >= 0
            let m = (-a.clone()).div_ceil(&b);
            if m > shift {
                shift = m;
            }
        }
    }
    let result: LatticeVector = x_ambient
        .iter()
        .zip(&z)
        .map(|(xi, zi)| xi + &shift * zi)
        .collect();
    debug_assert!(sigma.contains(&result));
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::make_cone;
    use crate::lattice::from_i64;
    use crate::linalg::{lattice_index_sum, LatticeIndex};

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        let v: Vec<LatticeVector> = gens.iter().map(|g| from_i64(g)).collect();
        make_cone(rank, &v).unwrap()
    }

    #[test]
    fn p1_fan_is_complete() {
        let plus = cone(1, &[&[1]]);
        let minus = cone(1, &[&[-1]]);
        let fan = Fan::from_maximal(1, vec![plus, minus]).unwrap();
        assert_eq!(fan.len(), 3); // zero cone added by closure
        assert!(fan.is_complete());
        let report = fan.validate();
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn missing_zero_cone_is_a_closure_violation() {
        let plus = cone(1, &[&[1]]);
        let minus = cone(1, &[&[-1]]);
        let fan = Fan::from_cones_unchecked(1, vec![plus, minus]);
        let report = fan.validate();
        assert!(!report.ok());
        assert!(report.violations.iter().any(|v| v.contains("missing")));
    }

    #[test]
    fn half_fan_is_not_complete() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let fan = Fan::from_maximal(2, vec![q]).unwrap();
        assert!(!fan.is_complete());
        // but it is a valid fan
        assert!(fan.validate().ok());
    }

    #[test]
    fn overlapping_cones_flagged() {
        // two 2-d cones overlapping in a 2-d region: intersection not a face
        let a = cone(2, &[&[1, 0], &[0, 1]]);
        let b = cone(2, &[&[1, 1], &[-1, 1]]);
        let mut all = vec![a.clone(), b.clone()];
        all.extend(a.faces().unwrap());
        all.extend(b.faces().unwrap());
        let fan = Fan::from_cones_unchecked(2, all);
        let report = fan.validate();
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("not a common face")));
    }

    #[test]
    fn smallest_containing_cone_prefers_low_dimension() {
        let q = cone(2, &[&[1, 0], &[0, 1]]);
        let fan = Fan::from_maximal(2, vec![q]).unwrap();
        let on_ray = fan.smallest_containing_cone(&[from_i64(&[2, 0])]).unwrap();
        assert_eq!(on_ray.dim(), 1);
        let interior = fan.smallest_containing_cone(&[from_i64(&[1, 1])]).unwrap();
        assert_eq!(interior.dim(), 2);
        let zero = fan.smallest_containing_cone(&[from_i64(&[0, 0])]).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(fan.smallest_containing_cone(&[from_i64(&[-1, 0])]).is_none());
    }

    #[test]
    fn lattice_normal_of_ray_over_origin() {
        let sigma = cone(2, &[&[1, 2]]);
        let tau = Cone::zero(2);
        let pair = ConePair::new(sigma, tau).unwrap();
        assert_eq!(lattice_normal(&pair).unwrap(), from_i64(&[1, 2]));
    }

    #[test]
    fn lattice_normal_quadrant_over_axis() {
        let sigma = cone(2, &[&[1, 0], &[0, 1]]);
        let tau = cone(2, &[&[1, 0]]);
        let pair = ConePair::new(sigma, tau).unwrap();
        let nv = lattice_normal(&pair).unwrap();
        // must lie in sigma and generate N_sigma/N_tau: second coordinate ±1
        assert_eq!(nv[1].clone().abs(), Int::from(1));
        assert!(!nv[1].is_negative());
    }

    #[test]
    fn lattice_normal_generates_quotient() {
        // sigma = cone{e1, (1,2)}, tau = ray e1: (1,2) itself has class 2,
        // so the normal must be a different point; verify via index = 1
        let sigma = cone(2, &[&[1, 0], &[1, 2]]);
        let tau = cone(2, &[&[1, 0]]);
        let pair = ConePair::new(sigma.clone(), tau.clone()).unwrap();
        let nv = lattice_normal(&pair).unwrap();
        assert!(sigma.contains(&nv));
        // N_sigma = Z^2 here; check [N_sigma : N_tau + Z nv] = 1
        let idx = lattice_index_sum(&[from_i64(&[1, 0])], &[nv], 2).unwrap();
        assert_eq!(idx, LatticeIndex::Finite(Int::from(1)));
    }

    #[test]
    fn cone_pair_contract() {
        let sigma = cone(2, &[&[1, 0], &[0, 1]]);
        let tau = cone(2, &[&[0, 1]]);
        assert!(ConePair::new(sigma.clone(), tau).is_ok());
        let far = cone(2, &[&[-1, 0]]);
        assert!(matches!(
            ConePair::new(sigma.clone(), far),
            Err(FanError::NotAFace)
        ));
        assert!(matches!(
            ConePair::new(sigma.clone(), Cone::zero(2)),
            Err(FanError::DimensionGap)
        ));
    }
}
