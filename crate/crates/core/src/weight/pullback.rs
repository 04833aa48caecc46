//! Flat pullback of Minkowski weights along a dominant toric morphism.

use std::sync::Arc;

use num_traits::Zero;

use crate::fan::Fan;
use crate::linalg::{lattice_index_sum, saturate_span, LatticeIndex};
use crate::{Int, IntMatrix};

use super::{MinkowskiWeight, WeightError};

/// Pull back `c` (codim k on the fan it lives on) to `src` along the
/// morphism induced by `psi`. For each codim-k cone tau' of `src`, find the
/// smallest cone tau of the target containing psi(tau'); the value is
/// [N : psi(N) + N_tau] * c(tau) when codim(tau) = k, and 0 when the image
/// drops into a cone of smaller codimension.
///
/// `src` must be compatible with (psi, target); a cone whose image lies in
/// no target cone reports INCOMPATIBLE.
pub fn pullback_along_morphism(
    psi: &IntMatrix,
    src: &Arc<Fan>,
    c: &MinkowskiWeight,
) -> Result<MinkowskiWeight, WeightError> {
    let dst: &Fan = c.fan();
    let n = src.rank();
    if !psi.is_square() || psi.rows() != n || dst.rank() != n {
        return Err(WeightError::Fan(crate::fan::FanError::DimensionMismatch));
    }
    if psi.det()?.is_zero() {
        return Err(WeightError::Fan(crate::fan::FanError::Singular));
    }
    let k = c.codim();
    let psi_columns = psi.columns();
    let mut values = std::collections::BTreeMap::new();
    for tau_prime in src.cones_of_codim(k) {
        let images = tau_prime.mapped_generators(psi)?;
        let tau = dst
            .smallest_containing_cone(&images)
            .ok_or(WeightError::Incompatible)?;
        let value = if tau.codim() == k {
            let tau_lattice = saturate_span(tau.generators(), n)?;
            match lattice_index_sum(&psi_columns, &tau_lattice, n)? {
                LatticeIndex::Finite(m) => m * c.value(tau.key()),
                // unreachable for nonsingular psi, but stay total
                LatticeIndex::Infinite => Int::zero(),
            }
        } else {
            Int::zero()
        };
        values.insert(tau_prime.key().clone(), value);
    }
    MinkowskiWeight::new(src.clone(), k, values)
}
