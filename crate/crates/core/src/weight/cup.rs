//! Cup products at the zero cone via the fan displacement rule, and
//! pushforward of a weight on a refinement to coordinates in a standard
//! target basis through the projection formula.

use num_traits::Zero;

use crate::fan::Fan;
use crate::linalg::Matrix;
use crate::Int;

use super::basis::spec_matches_fan;
use super::generic::{build_codim_table, GenericVector, MeetEntry, MeetTables};
use super::pullback::pullback_along_morphism;
use super::{same_fan, DualBasisSpec, MinkowskiWeight, WeightError};

/// Displacement-rule evaluation of (c1 ∪ c2)({0}) for weights of
/// complementary codimensions k and n-k on the same complete fan:
/// the sum over transversally meeting pairs (sigma, tau + v) of
/// [N : N_sigma + N_tau] * c1(sigma) * c2(tau).
///
/// Any degenerate meet reports GENERICITY_FAILURE; the caller re-picks v.
pub fn cup_at_zero(
    c1: &MinkowskiWeight,
    c2: &MinkowskiWeight,
    v: &GenericVector,
) -> Result<Int, WeightError> {
    let fan = c1.fan();
    if !same_fan(fan, c2.fan()) {
        return Err(WeightError::FanMismatch);
    }
    let n = fan.rank();
    if c1.codim() + c2.codim() != n {
        return Err(WeightError::CodimMismatch);
    }
    let table = build_codim_table(fan, &v.v, c1.codim())?;
    Ok(cup_from_table(fan, &table, c1, c2))
}

/// The displacement sum over a precomputed meeting-pair table for
/// (codim k, codim n-k) = (c1.codim, c2.codim).
pub fn cup_from_table(
    fan: &Fan,
    table: &[MeetEntry],
    c1: &MinkowskiWeight,
    c2: &MinkowskiWeight,
) -> Int {
    let n = fan.rank();
    let k = c1.codim();
    let sigma_values: Vec<&Int> = fan
        .cones_of_codim(k)
        .map(|c| c1.value(c.key()))
        .collect();
    let tau_values: Vec<&Int> = fan
        .cones_of_codim(n - k)
        .map(|c| c2.value(c.key()))
        .collect();
    let mut sum = Int::zero();
    for (i, j, m) in table {
        let a = sigma_values[*i];
        let b = tau_values[*j];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        sum += m * a * b;
    }
    sum
}

/// Coordinates of the pushforward of `c_tilde` (codim k on a refinement of
/// `spec.target`) in the standard basis: for each basis element, pull its
/// Poincaré-dual weight back along the identity-induced morphism and cup
/// with `c_tilde` at {0}.
pub fn pushforward_to_target(
    c_tilde: &MinkowskiWeight,
    spec: &DualBasisSpec,
    v: &GenericVector,
) -> Result<Vec<Int>, WeightError> {
    let fan = c_tilde.fan();
    let table = build_codim_table(fan, &v.v, c_tilde.codim())?;
    pushforward_inner(c_tilde, spec, &table)
}

/// Same as `pushforward_to_target` but reusing prebuilt meet tables.
pub fn pushforward_with_tables(
    c_tilde: &MinkowskiWeight,
    spec: &DualBasisSpec,
    tables: &MeetTables,
) -> Result<Vec<Int>, WeightError> {
    pushforward_inner(c_tilde, spec, tables.table(c_tilde.codim()))
}

fn pushforward_inner(
    c_tilde: &MinkowskiWeight,
    spec: &DualBasisSpec,
    table: &[MeetEntry],
) -> Result<Vec<Int>, WeightError> {
    let fan = c_tilde.fan();
    if spec.codim != c_tilde.codim() {
        return Err(WeightError::CodimMismatch);
    }
    let identity: Matrix<Int> = Matrix::identity(fan.rank());
    let mut coords = Vec::with_capacity(spec.elements.len());
    for element in &spec.elements {
        // the section-3.2 formula with psi = identity: all indices are 1
        let dual_on_refinement = if spec_matches_fan(spec, fan) {
            element.dual_weight.clone()
        } else {
            pullback_along_morphism(&identity, fan, &element.dual_weight)?
        };
        coords.push(cup_from_table(fan, table, c_tilde, &dual_on_refinement));
    }
    Ok(coords)
}
