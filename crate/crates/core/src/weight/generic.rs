//! Generic displacement vectors and the meet tables they induce.
//!
//! "Generic" is operational: a candidate v is accepted iff no
//! complementary-dimension cone pair of the working fan produces a
//! DEGENERATE translated meet. Accepted vectors come with the full table
//! of meeting pairs and their lattice indices, which is exactly what every
//! displacement-rule evaluation needs afterwards.

use num_traits::Signed;
use rayon::prelude::*;

use crate::fan::{classify_cols_i128, meet_class, Cone, Fan, MeetClass};
use crate::linalg::Matrix;
use crate::rng::SplitMix64;
use crate::{Int, LatticeVector};

use super::WeightError;

const COORDINATE_BOUND: i64 = 1_000_000;
const MAX_ATTEMPTS: u32 = 1000;

/// A displacement vector accepted as generic, with its provenance.
#[derive(Clone, Debug)]
pub struct GenericVector {
    pub v: LatticeVector,
    pub seed: u64,
    pub attempts: u32,
}

/// One meeting pair: indices into the fan's codim-k and codim-(n-k) cone
/// orderings, plus the lattice index m = [N : N_sigma + N_tau].
pub type MeetEntry = (usize, usize, Int);

/// For each codimension k, the pairs (sigma, tau) in
/// fan^(k) × fan^(n-k) with sigma meeting tau + v transversally in both
/// relative interiors. Indices refer to the fan's deterministic
/// codimension-k cone ordering.
#[derive(Clone, Debug)]
pub struct MeetTables {
    rank: usize,
    tables: Vec<Vec<MeetEntry>>,
}

impl MeetTables {
    /// Build the tables for every k, or fail with GENERICITY_FAILURE on the
    /// first degenerate meet.
    pub fn build(fan: &Fan, v: &[Int]) -> Result<MeetTables, WeightError> {
        let n = fan.rank();
        let mut tables = Vec::with_capacity(n + 1);
        for k in 0..=n {
            tables.push(build_codim_table(fan, v, k)?);
        }
        Ok(MeetTables { rank: n, tables })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Meeting pairs for (codim k, codim n-k).
    pub fn table(&self, k: usize) -> &[MeetEntry] {
        &self.tables[k]
    }
}

/// Meeting pairs for a single codimension. Parallel over the pair grid;
/// the output order is deterministic (row-major over the fan's orderings).
pub(crate) fn build_codim_table(
    fan: &Fan,
    v: &[Int],
    k: usize,
) -> Result<Vec<MeetEntry>, WeightError> {
    let n = fan.rank();
    let sigmas: Vec<&Cone> = fan.cones_of_codim(k).collect();
    let taus: Vec<&Cone> = fan.cones_of_codim(n - k).collect();
    // saturated span bases and i128 generator columns once per cone
    let sigma_bases = span_bases(&sigmas, n)?;
    let tau_bases = span_bases(&taus, n)?;
    let sigma_cols: Vec<Option<Vec<i128>>> = sigmas.iter().map(|c| cols_i128(c, false)).collect();
    let tau_cols: Vec<Option<Vec<i128>>> = taus.iter().map(|c| cols_i128(c, true)).collect();
    let v128: Option<Vec<i128>> = v.iter().map(num_traits::ToPrimitive::to_i128).collect();
    let cells: Vec<(usize, usize)> = (0..sigmas.len())
        .flat_map(|i| (0..taus.len()).map(move |j| (i, j)))
        .collect();
    let hits: Result<Vec<Vec<MeetEntry>>, WeightError> = cells
        .par_chunks(1024)
        .map(|chunk| {
            let mut base = vec![0i128; n * n];
            let mut scratch = vec![0i128; n * n];
            let mut found = Vec::new();
            for &(i, j) in chunk {
                let sigma = sigmas[i];
                let tau = taus[j];
                let fast = match (&sigma_cols[i], &tau_cols[j], &v128) {
                    (Some(a), Some(b), Some(vv))
                        if sigma.is_simplicial() && tau.is_simplicial() =>
                    {
                        classify_cols_i128(a, b, vv, n, &mut base, &mut scratch)
                    }
                    _ => None,
                };
                let class = match fast {
                    Some(c) => c,
                    None => meet_class(sigma, tau, v)?,
                };
                match class {
                    MeetClass::Degenerate => return Err(WeightError::GenericityFailure),
                    MeetClass::Empty => {}
                    MeetClass::Interior => {
                        found.push((i, j, pair_index(&sigma_bases[i], &tau_bases[j], n)));
                    }
                }
            }
            Ok(found)
        })
        .collect();
    Ok(hits?.into_iter().flatten().collect())
}

fn span_bases(cones: &[&Cone], n: usize) -> Result<Vec<Vec<LatticeVector>>, WeightError> {
    cones
        .iter()
        .map(|c| crate::linalg::saturate_span(c.generators(), n).map_err(WeightError::from))
        .collect()
}

/// Generator columns as a flat i128 block (column-major), negated for the
/// tau slot. None when an entry does not fit.
fn cols_i128(cone: &Cone, negate: bool) -> Option<Vec<i128>> {
    let n = cone.rank();
    let mut out = Vec::with_capacity(cone.generators().len() * n);
    for g in cone.generators() {
        for x in g {
            let v = num_traits::ToPrimitive::to_i128(x)?;
            out.push(if negate { -v } else { v });
        }
    }
    Some(out)
}

/// m_{sigma,tau} = [N : N_sigma + N_tau] for transversally meeting cones:
/// the absolute determinant of the stacked saturated span bases.
fn pair_index(sigma_basis: &[LatticeVector], tau_basis: &[LatticeVector], n: usize) -> Int {
    let mut basis = sigma_basis.to_vec();
    basis.extend_from_slice(tau_basis);
    debug_assert_eq!(basis.len(), n);
    Matrix::from_columns(n, &basis)
        .and_then(|m| m.det())
        .expect("square stack")
        .abs()
}

/// Sample seeded integer vectors until one is generic for every supplied
/// fan. Deterministic: the same seed always yields the same vector.
pub fn pick_generic_vector(fans: &[&Fan], seed: u64) -> Result<GenericVector, WeightError> {
    let mut rng = SplitMix64::new(seed);
    let rank = fans.first().map_or(0, |f| f.rank());
    for attempt in 1..=MAX_ATTEMPTS {
        let v = sample_vector(&mut rng, rank);
        let ok = fans
            .iter()
            .all(|fan| MeetTables::build(fan, &v).is_ok());
        if ok {
            return Ok(GenericVector {
                v,
                seed,
                attempts: attempt,
            });
        }
    }
    Err(WeightError::Exhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Like `pick_generic_vector` for a single fan, returning the accepted
/// vector together with its meet tables so callers pay for the genericity
/// scan exactly once.
pub fn pick_generic_with_tables(
    fan: &Fan,
    seed: u64,
) -> Result<(GenericVector, MeetTables), WeightError> {
    let mut rng = SplitMix64::new(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let v = sample_vector(&mut rng, fan.rank());
        match MeetTables::build(fan, &v) {
            Ok(tables) => {
                return Ok((
                    GenericVector {
                        v,
                        seed,
                        attempts: attempt,
                    },
                    tables,
                ))
            }
            Err(WeightError::GenericityFailure) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(WeightError::Exhausted {
        attempts: MAX_ATTEMPTS,
    })
}

fn sample_vector(rng: &mut SplitMix64, rank: usize) -> LatticeVector {
    loop {
        let v: LatticeVector = (0..rank)
            .map(|_| Int::from(rng.int_in(-COORDINATE_BOUND, COORDINATE_BOUND)))
            .collect();
        if !crate::lattice::is_zero(&v) {
            return v;
        }
    }
}

/// Used by tests: check v against every complementary pair directly.
#[cfg(test)]
fn is_generic(fan: &Fan, v: &[Int]) -> bool {
    MeetTables::build(fan, v).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_p1n, fan_pn};
    use crate::lattice::from_i64;

    #[test]
    fn p1_any_nonzero_vector_is_generic() {
        let fan = fan_p1n(1).unwrap();
        let g = pick_generic_vector(&[&fan], 0).unwrap();
        assert_eq!(g.attempts, 1);
        assert!(is_generic(&fan, &g.v));
        assert!(is_generic(&fan, &from_i64(&[1])));
    }

    #[test]
    fn determinism_per_seed() {
        let fan = fan_pn(2).unwrap();
        let a = pick_generic_vector(&[&fan], 42).unwrap();
        let b = pick_generic_vector(&[&fan], 42).unwrap();
        assert_eq!(a.v, b.v);
        assert_eq!(a.attempts, b.attempts);
        let c = pick_generic_vector(&[&fan], 43).unwrap();
        assert!(c.v != a.v);
    }

    #[test]
    fn axis_vector_is_rejected_on_p1xp1() {
        // v on a ray of the fan produces a degenerate meet
        let fan = fan_p1n(2).unwrap();
        assert!(!is_generic(&fan, &from_i64(&[5, 0])));
        assert!(is_generic(&fan, &from_i64(&[5, 3])));
    }

    #[test]
    fn meet_tables_have_expected_structure_on_p1xp1() {
        let fan = fan_p1n(2).unwrap();
        let v = from_i64(&[7, -11]);
        let tables = MeetTables::build(&fan, &v).unwrap();
        // k = 0: the maximal cone containing v meets tau = {0}; exactly one
        assert_eq!(tables.table(0).len(), 1);
        // k = 2: {0} meets tau + v iff -v interior to tau; exactly one
        assert_eq!(tables.table(2).len(), 1);
        // k = 1: two (ray, ray) pairs meet, one per axis split of v; each
        // with lattice index [Z^2 : Z e_i + Z e_j] = 1
        assert_eq!(tables.table(1).len(), 2);
        for (_, _, m) in tables.table(1) {
            assert_eq!(*m, Int::from(1));
        }
    }

    #[test]
    fn pn_generic_vector_found_quickly() {
        for n in 1..=3 {
            let fan = fan_pn(n).unwrap();
            let g = pick_generic_vector(&[&fan], 0).unwrap();
            assert!(g.attempts <= 3, "n={} attempts={}", n, g.attempts);
        }
    }

    #[test]
    fn multiple_fans_all_checked() {
        let a = fan_p1n(2).unwrap();
        let b = fan_pn(2).unwrap();
        let g = pick_generic_vector(&[&a, &b], 7).unwrap();
        assert!(is_generic(&a, &g.v));
        assert!(is_generic(&b, &g.v));
    }
}
