//! Optional smoothing pass: stellar subdivision of a simplicial fan until
//! every cone is nonsingular (its generators form a basis of the lattice
//! points of its span). The displacement-rule pipeline does not need this
//! — its outputs are validated against closed forms — so the pass is
//! exposed separately for callers that want nonsingular models.
//!
//! Supported for rank <= 3, where the termination argument is standard:
//! subdividing at a minimal point of the fundamental parallelepiped
//! strictly decreases every resulting multiplicity.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::primitive;
use crate::linalg::{saturate_span, smith_normal_form, Matrix};
use crate::{Int, LatticeVector};

use super::cone::{make_cone, Cone};
use super::{Fan, FanError};

/// Multiplicity of a simplicial cone: the index of the sublattice spanned
/// by its generators inside the full lattice of its span. 1 means smooth.
pub fn cone_multiplicity(cone: &Cone) -> Result<Int, FanError> {
    if cone.dim() == 0 {
        return Ok(Int::from(1));
    }
    debug_assert!(cone.is_simplicial());
    let n = cone.rank();
    let basis = saturate_span(cone.generators(), n)?;
    let basis_mat = Matrix::from_columns(n, &basis)?;
    let snf = smith_normal_form(&basis_mat);
    let mut local = Vec::with_capacity(cone.dim());
    for g in cone.generators() {
        local.push(snf.solve(g)?.expect("generator lies in its span lattice"));
    }
    Ok(Matrix::from_columns(cone.dim(), &local)?.det()?.abs())
}

/// Repeatedly stellar-subdivide until every cone is smooth.
///
/// The fan must be simplicial (run `simplicialize` first); rank > 3 is
/// rejected.
pub fn smooth_subdivide(fan: &Fan) -> Result<Fan, FanError> {
    if fan.rank() > 3 {
        return Err(FanError::DimensionMismatch);
    }
    let mut current = fan.clone();
    loop {
        // the worst offender first keeps the subdivision shallow
        let mut worst: Option<(Int, &Cone)> = None;
        for cone in current.cones() {
            if !cone.is_simplicial() {
                return Err(FanError::NotStronglyConvex);
            }
            let mult = cone_multiplicity(cone)?;
            if mult > Int::from(1) {
                match &worst {
                    Some((m, _)) if *m >= mult => {}
                    _ => worst = Some((mult, cone)),
                }
            }
        }
        let Some((mult, cone)) = worst else {
            return Ok(current);
        };
        let ray = subdivision_point(cone, &mult)?;
        current = stellar_subdivide(&current, &ray)?;
    }
}

/// A primitive lattice point in the open fundamental parallelepiped of the
/// cone, with minimal coefficient sum: stellar subdivision there strictly
/// decreases the multiplicities of all resulting cones.
fn subdivision_point(cone: &Cone, mult: &Int) -> Result<LatticeVector, FanError> {
    let n = cone.rank();
    let d = cone.dim();
    let m = mult.to_i64().expect("desk-scale multiplicity");
    let gens = cone.generators();
    let gen_mat = Matrix::from_columns(n, &gens.to_vec())?;
    // lattice points of the span are (1/m) * integer combinations that land
    // in Z^n; enumerate coefficient vectors c in [0, m)^d, not all zero
    let mut best: Option<(i64, LatticeVector)> = None;
    let mut counter = vec![0i64; d];
    loop {
        // advance odometer
        let mut idx = 0;
        while idx < d {
            counter[idx] += 1;
            if counter[idx] < m {
                break;
            }
            counter[idx] = 0;
            idx += 1;
        }
        if idx == d {
            break;
        }
        let total: i64 = counter.iter().sum();
        if total == 0 {
            continue;
        }
        // candidate = (1/m) sum c_i g_i, integral iff all coordinates divide
        let scaled: Vec<Int> = (0..n)
            .map(|row| {
                let mut acc = Int::zero();
                for (j, c) in counter.iter().enumerate() {
                    acc += Int::from(*c) * gen_mat.at(row, j);
                }
                acc
            })
            .collect();
        if scaled.iter().any(|x| !x.mod_floor(mult).is_zero()) {
            continue;
        }
        let point: LatticeVector = scaled.iter().map(|x| x / mult).collect();
        match &best {
            Some((t, _)) if *t <= total => {}
            _ => best = Some((total, primitive(&point))),
        }
    }
    best.map(|(_, p)| p).ok_or(FanError::NotStronglyConvex)
}

/// Stellar subdivision of the whole fan at a new primitive ray: every cone
/// containing the ray is replaced by the joins of the ray with its faces
/// that do not contain it.
fn stellar_subdivide(fan: &Fan, ray: &LatticeVector) -> Result<Fan, FanError> {
    let mut maximal = Vec::new();
    for cone in fan.maximal_cones() {
        if !cone.contains(ray) {
            maximal.push(cone.clone());
            continue;
        }
        // maximal pieces are the joins of the ray with the facets that
        // avoid it; lower-dimensional pieces arise through face closure
        for facet in cone.facets()? {
            if facet.contains(ray) {
                continue;
            }
            let mut gens = facet.generators().to_vec();
            gens.push(ray.clone());
            maximal.push(make_cone(fan.rank(), &gens)?);
        }
    }
    Fan::from_maximal(fan.rank(), maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{common_refinement, fan_p1n, simplicialize};
    use crate::lattice::from_i64;
    use crate::rng::SplitMix64;

    #[test]
    fn multiplicity_detects_singular_cones() {
        let smooth = make_cone(2, &[from_i64(&[1, 0]), from_i64(&[0, 1])]).unwrap();
        assert_eq!(cone_multiplicity(&smooth).unwrap(), Int::from(1));
        // cone over (1,0), (1,2) has multiplicity 2
        let singular = make_cone(2, &[from_i64(&[1, 0]), from_i64(&[1, 2])]).unwrap();
        assert_eq!(cone_multiplicity(&singular).unwrap(), Int::from(2));
    }

    #[test]
    fn smooths_a_quadric_cone_fan() {
        let singular = make_cone(2, &[from_i64(&[1, 0]), from_i64(&[1, 2])]).unwrap();
        let fan = Fan::from_maximal(2, vec![singular]).unwrap();
        let smoothed = smooth_subdivide(&fan).unwrap();
        assert!(smoothed.validate().ok());
        for cone in smoothed.cones() {
            assert_eq!(cone_multiplicity(cone).unwrap(), Int::from(1));
        }
        // the new ray must be (1, 1)
        assert!(smoothed.contains_key(&vec![from_i64(&[1, 1])]));
    }

    #[test]
    fn smooths_random_refinements_in_rank_2() {
        let mut rng = SplitMix64::new(0x50);
        let fan = fan_p1n(2).unwrap();
        let mut done = 0;
        while done < 3 {
            let psi = Matrix::from_fn(2, 2, |_, _| Int::from(rng.int_in(-3, 3)));
            if psi.det().unwrap().is_zero() {
                continue;
            }
            let refined = common_refinement(&fan, &psi).unwrap();
            let smoothed = smooth_subdivide(&refined).unwrap();
            assert!(smoothed.is_complete());
            assert!(smoothed.validate().ok(), "psi = {:?}", psi);
            for cone in smoothed.cones() {
                assert_eq!(cone_multiplicity(cone).unwrap(), Int::from(1), "psi = {:?}", psi);
            }
            // still refines the original fan
            let id: crate::IntMatrix = Matrix::identity(2);
            assert!(crate::fan::is_compatible(&smoothed, &id, &refined).unwrap());
            done += 1;
        }
    }

    #[test]
    fn smooths_a_rank_3_cone() {
        let singular = make_cone(
            3,
            &[from_i64(&[1, 0, 0]), from_i64(&[0, 1, 0]), from_i64(&[1, 1, 2])],
        )
        .unwrap();
        let fan = simplicialize(&Fan::from_maximal(3, vec![singular]).unwrap()).unwrap();
        let smoothed = smooth_subdivide(&fan).unwrap();
        for cone in smoothed.cones() {
            assert_eq!(cone_multiplicity(cone).unwrap(), Int::from(1));
        }
        assert!(smoothed.validate().ok());
    }

    #[test]
    fn rank_above_3_rejected() {
        let fan = crate::fan::fan_pn(4).unwrap();
        assert!(smooth_subdivide(&fan).is_err());
    }
}
