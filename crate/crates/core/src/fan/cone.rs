//! Strongly convex rational polyhedral cones with both descriptions:
//! primitive extreme-ray generators and facet inequalities (plus span
//! equations for lower-dimensional cones).

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::lattice::{self, dot, primitive};
use crate::linalg::{kernel_basis, saturate_span, smith_normal_form, Matrix};
use crate::{Int, IntMatrix, LatticeVector};

use super::FanError;

/// Canonical cone identity: the lexicographically sorted list of primitive
/// extreme-ray generators. All fan indices key on it.
pub type ConeKey = Vec<LatticeVector>;

/// A strongly convex rational polyhedral cone in Z^rank.
///
/// `facet_normals` cut the cone out of its linear span; `span_equations`
/// cut the span out of the ambient space. A point is in the cone iff it
/// satisfies every equation exactly and every inequality nonnegatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    dim: usize,
    generators: Vec<LatticeVector>,
    facet_normals: Vec<LatticeVector>,
    span_equations: Vec<LatticeVector>,
}

impl Cone {
    /// The zero cone {0}.
    pub fn zero(rank: usize) -> Cone {
        Cone {
            rank,
            dim: 0,
            generators: Vec::new(),
            facet_normals: Vec::new(),
            span_equations: (0..rank).map(|i| lattice::unit(rank, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.rank - self.dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facet_normals
    }

    pub fn span_equations(&self) -> &[LatticeVector] {
        &self.span_equations
    }

    pub fn key(&self) -> &ConeKey {
        &self.generators
    }

    pub fn is_zero_cone(&self) -> bool {
        self.dim == 0
    }

    pub fn is_simplicial(&self) -> bool {
        self.generators.len() == self.dim
    }

    /// Exact membership test against the dual description.
    pub fn contains(&self, x: &[Int]) -> bool {
        debug_assert_eq!(x.len(), self.rank);
        self.span_equations.iter().all(|u| dot(u, x).is_zero())
            && self.facet_normals.iter().all(|u| !dot(u, x).is_negative())
    }

    pub fn contains_all(&self, xs: &[LatticeVector]) -> bool {
        xs.iter().all(|x| self.contains(x))
    }

    /// True iff `other` is a subset of this cone.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        if other.is_zero_cone() {
            return true;
        }
        self.contains_all(&other.generators)
    }

    /// A lattice point in the relative interior (the sum of the generators).
    pub fn interior_point(&self) -> LatticeVector {
        lattice::sum(&self.generators, self.rank)
    }

    /// Generator subsets of the facets, without building the cones. For a
    /// simplicial cone these are the leave-one-out subsets; in general the
    /// tight set of each facet normal. Each subset is the canonical key of
    /// the facet it generates.
    pub(crate) fn facet_generator_sets(&self) -> Vec<Vec<LatticeVector>> {
        if self.dim == 0 {
            return Vec::new();
        }
        if self.dim == 1 {
            return vec![Vec::new()];
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        if self.is_simplicial() {
            for omit in 0..self.generators.len() {
                let sub: Vec<LatticeVector> = self
                    .generators
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != omit)
                    .map(|(_, g)| g.clone())
                    .collect();
                if seen.insert(sub.clone()) {
                    out.push(sub);
                }
            }
        } else {
            for u in &self.facet_normals {
                let tight: Vec<LatticeVector> = self
                    .generators
                    .iter()
                    .filter(|g| dot(u, g).is_zero())
                    .cloned()
                    .collect();
                if seen.insert(tight.clone()) {
                    out.push(tight);
                }
            }
        }
        out
    }

    /// The facets (faces of dimension dim-1). The zero cone has none.
    pub fn facets(&self) -> Result<Vec<Cone>, FanError> {
        let mut out = Vec::new();
        for set in self.facet_generator_sets() {
            let face = make_cone(self.rank, &set)?;
            debug_assert_eq!(face.dim(), self.dim - 1);
            out.push(face);
        }
        Ok(out)
    }

    /// All faces, including the cone itself and the zero cone.
    pub fn faces(&self) -> Result<Vec<Cone>, FanError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.key().clone()) {
                continue;
            }
            stack.extend(c.facets()?);
            out.push(c);
        }
        Ok(out)
    }

    /// Images of the generators under an integer matrix.
    pub fn mapped_generators(&self, psi: &IntMatrix) -> Result<Vec<LatticeVector>, FanError> {
        let mut out = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            out.push(psi.mul_vec(g)?);
        }
        Ok(out)
    }
}

use num_traits::Signed;

/// Build a cone from generating rays: primitivizes, removes redundant
/// generators, computes facet normals and span equations exactly.
///
/// Errors with `NotStronglyConvex` if the generators span a line.
pub fn make_cone(rank: usize, raw: &[LatticeVector]) -> Result<Cone, FanError> {
    for g in raw {
        if g.len() != rank {
            return Err(FanError::DimensionMismatch);
        }
    }
    let gens: BTreeSet<LatticeVector> = raw
        .iter()
        .filter(|g| !lattice::is_zero(g))
        .map(|g| primitive(g))
        .collect();
    let gens: Vec<LatticeVector> = gens.into_iter().collect();
    if gens.is_empty() {
        return Ok(Cone::zero(rank));
    }

    // saturated basis of the span; generators in span coordinates
    let span_basis = saturate_span(&gens, rank)?;
    let dim = span_basis.len();
    let basis_mat = Matrix::from_columns(rank, &span_basis)?;
    let basis_snf = smith_normal_form(&basis_mat);
    let mut local = Vec::with_capacity(gens.len());
    for g in &gens {
        let y = basis_snf
            .solve(g)?
            .expect("generator must lie in the saturated span");
        local.push(y);
    }

    // covectors vanishing on the span
    let gen_rows = Matrix::from_rows(gens.clone())?;
    let span_equations: Vec<LatticeVector> = kernel_basis(&gen_rows)
        .into_iter()
        .map(|u| primitive(&u))
        .collect();

    // facet normals of the full-dimensional cone in span coordinates are the
    // extreme rays of its dual cone {u : u.g >= 0 for all g}
    let local_normals = extreme_rays_h(&local, dim)?;
    let normal_mat = Matrix::from_rows(local_normals.clone())?;
    if normal_mat.rank() < dim {
        // dual not full-dimensional: the cone contains a line
        return Err(FanError::NotStronglyConvex);
    }

    // keep exactly the extreme generators: tight normals must span a hyperplane
    let mut extreme = Vec::new();
    for (g, y) in gens.iter().zip(&local) {
        let tight: Vec<LatticeVector> = local_normals
            .iter()
            .filter(|u| dot(u, y).is_zero())
            .cloned()
            .collect();
        let r = if tight.is_empty() {
            0
        } else {
            Matrix::from_rows(tight)?.rank()
        };
        if r + 1 == dim {
            extreme.push(g.clone());
        }
    }
    extreme.sort();

    // lift facet normals back to ambient covectors
    let basis_t_snf = smith_normal_form(&basis_mat.transpose());
    let mut facet_normals = Vec::with_capacity(local_normals.len());
    for u in &local_normals {
        let w = basis_t_snf
            .solve(u)?
            .expect("saturated basis transpose is surjective over Z");
        facet_normals.push(primitive(&w));
    }
    facet_normals.sort();

    Ok(Cone {
        rank,
        dim,
        generators: extreme,
        facet_normals,
        span_equations,
    })
}

/// Intersection of two cones, computed exactly from the stacked dual
/// descriptions and converted back to generator form.
pub fn cone_intersection(a: &Cone, b: &Cone) -> Result<Cone, FanError> {
    if a.rank != b.rank {
        return Err(FanError::DimensionMismatch);
    }
    let equalities: Vec<LatticeVector> = a
        .span_equations
        .iter()
        .chain(&b.span_equations)
        .cloned()
        .collect();
    let inequalities: Vec<LatticeVector> = a
        .facet_normals
        .iter()
        .chain(&b.facet_normals)
        .cloned()
        .collect();
    let rays = rays_from_h_rep(a.rank, &equalities, &inequalities)?;
    make_cone(a.rank, &rays)
}

/// Extreme rays of {x : E x = 0, A x >= 0}, which must be strongly convex.
pub(crate) fn rays_from_h_rep(
    rank: usize,
    equalities: &[LatticeVector],
    inequalities: &[LatticeVector],
) -> Result<Vec<LatticeVector>, FanError> {
    let subspace: Vec<LatticeVector> = if equalities.is_empty() {
        (0..rank).map(|i| lattice::unit(rank, i)).collect()
    } else {
        kernel_basis(&Matrix::from_rows(equalities.to_vec())?)
    };
    let d = subspace.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let basis = Matrix::from_columns(rank, &subspace)?;
    // inequality u.x >= 0 becomes (B^T u).y >= 0 in subspace coordinates
    let basis_t = basis.transpose();
    let mut rows: BTreeSet<LatticeVector> = BTreeSet::new();
    for u in inequalities {
        let r = basis_t.mul_vec(u)?;
        if !lattice::is_zero(&r) {
            rows.insert(primitive(&r));
        }
    }
    let rows: Vec<LatticeVector> = rows.into_iter().collect();
    let local = extreme_rays_h(&rows, d)?;
    Ok(local.iter().map(|y| primitive(&basis.mul_vec(y).unwrap())).collect())
}

/// Extreme rays of the pointed cone {y in R^d : r.y >= 0 for r in rows}.
///
/// Subset enumeration: an extreme ray is the 1-dimensional kernel of some
/// (d-1)-subset of the constraints, oriented to satisfy the rest. This is
/// exact and robust at desk-scale dimensions; errors with NotStronglyConvex
/// when the constraint matrix does not have full column rank (the region
/// then contains a line).
fn extreme_rays_h(rows: &[LatticeVector], d: usize) -> Result<Vec<LatticeVector>, FanError> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let mat = if rows.is_empty() {
        Matrix::zero(1, d)
    } else {
        Matrix::from_rows(rows.to_vec())?
    };
    if mat.rank() < d {
        return Err(FanError::NotStronglyConvex);
    }
    let satisfies = |r: &[Int]| rows.iter().all(|u| !dot(u, r).is_negative());
    let mut found: BTreeSet<LatticeVector> = BTreeSet::new();
    for subset in crate::linalg::k_subsets(rows.len(), d - 1) {
        let sub = Matrix::from_rows(subset.iter().map(|&i| rows[i].clone()).collect())?;
        let kern = if subset.is_empty() {
            vec![lattice::unit(d, 0)]
        } else {
            kernel_basis(&sub)
        };
        if kern.len() != 1 {
            continue;
        }
        let r = primitive(&kern[0]);
        if satisfies(&r) {
            found.insert(r);
        } else {
            let nr = lattice::neg(&r);
            if satisfies(&nr) {
                found.insert(nr);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Pulling triangulation of a cone over its own rays: deterministic
/// (always pulls the lexicographically smallest ray), hence consistent
/// across shared faces of a fan.
pub fn triangulate(cone: &Cone) -> Result<Vec<Cone>, FanError> {
    if cone.is_simplicial() {
        return Ok(vec![cone.clone()]);
    }
    let apex = cone.generators[0].clone();
    let mut out = Vec::new();
    for facet in cone.facets()? {
        if facet.contains(&apex) {
            continue;
        }
        for piece in triangulate(&facet)? {
            let mut gens = piece.generators().to_vec();
            gens.push(apex.clone());
            let simplex = make_cone(cone.rank, &gens)?;
            debug_assert!(simplex.is_simplicial());
            out.push(simplex);
        }
    }
    Ok(out)
}
