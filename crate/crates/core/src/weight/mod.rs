//! Minkowski weights: integer-valued functions on the codimension-k cones
//! of a complete fan satisfying the balancing relation, representing Chow
//! cohomology classes. Pullback along toric morphisms, cup products at {0}
//! via the fan displacement rule, and pushforward through Poincaré-dual
//! bases on the standard targets.

mod basis;
mod cup;
mod generic;
mod pullback;

pub use basis::{standard_weight_basis, DualBasisElement, DualBasisSpec, StandardTarget};
pub use cup::{cup_at_zero, cup_from_table, pushforward_to_target, pushforward_with_tables};
pub use generic::{pick_generic_vector, pick_generic_with_tables, GenericVector, MeetEntry, MeetTables};
pub use pullback::pullback_along_morphism;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::fan::{lattice_normal, Cone, ConeKey, ConePair, Fan, FanError};
use crate::lattice::{dot, unit};
use crate::linalg::{kernel_basis, LinalgError, Matrix};
use crate::{Int, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("UNSUPPORTED_TARGET: standard bases exist only for (P^1)^n and P^n fans")]
    UnsupportedTarget,
    #[error("INCOMPATIBLE: the image of a cone lies in no cone of the target fan")]
    Incompatible,
    #[error("GENERICITY_FAILURE: a degenerate translated meet was encountered")]
    GenericityFailure,
    #[error("EXHAUSTED: no generic vector found after {attempts} attempts")]
    Exhausted { attempts: u32 },
    #[error("weights live on different fans")]
    FanMismatch,
    #[error("weight codimensions do not match the operation's contract")]
    CodimMismatch,
    #[error("weight values must cover exactly the codimension-{codim} cones")]
    CoverageMismatch { codim: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An integer-valued function on the codimension-k cones of a complete fan.
/// Construction does not force the balancing relation; `verify_weight`
/// checks it.
#[derive(Clone, Debug)]
pub struct MinkowskiWeight {
    fan: Arc<Fan>,
    codim: usize,
    values: BTreeMap<ConeKey, Int>,
}

impl MinkowskiWeight {
    pub fn new(
        fan: Arc<Fan>,
        codim: usize,
        values: BTreeMap<ConeKey, Int>,
    ) -> Result<MinkowskiWeight, WeightError> {
        let expected = fan.cones_of_codim(codim).count();
        if values.len() != expected
            || !fan
                .cones_of_codim(codim)
                .all(|c| values.contains_key(c.key()))
        {
            return Err(WeightError::CoverageMismatch { codim });
        }
        Ok(MinkowskiWeight { fan, codim, values })
    }

    /// Weight assigning `f(cone)` to every codimension-k cone.
    pub fn from_fn(fan: Arc<Fan>, codim: usize, f: impl Fn(&Cone) -> Int) -> MinkowskiWeight {
        let values = fan
            .cones_of_codim(codim)
            .map(|c| (c.key().clone(), f(c)))
            .collect();
        MinkowskiWeight { fan, codim, values }
    }

    pub fn constant(fan: Arc<Fan>, codim: usize, value: Int) -> MinkowskiWeight {
        MinkowskiWeight::from_fn(fan, codim, |_| value.clone())
    }

    pub fn zero(fan: Arc<Fan>, codim: usize) -> MinkowskiWeight {
        MinkowskiWeight::constant(fan, codim, Int::zero())
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn values(&self) -> &BTreeMap<ConeKey, Int> {
        &self.values
    }

    pub fn value(&self, key: &ConeKey) -> &Int {
        &self.values[key]
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// Linear combination a*self + b*other (same fan, same codim).
    pub fn combine(
        &self,
        a: &Int,
        other: &MinkowskiWeight,
        b: &Int,
    ) -> Result<MinkowskiWeight, WeightError> {
        if !same_fan(&self.fan, &other.fan) {
            return Err(WeightError::FanMismatch);
        }
        if self.codim != other.codim {
            return Err(WeightError::CodimMismatch);
        }
        let values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), a * v + b * &other.values[k]))
            .collect();
        Ok(MinkowskiWeight {
            fan: self.fan.clone(),
            codim: self.codim,
            values,
        })
    }
}

/// True when the two handles denote the same fan (pointer fast path, then
/// structural comparison of the cone key sets).
pub(crate) fn same_fan(a: &Arc<Fan>, b: &Arc<Fan>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.rank() == b.rank()
            && a.len() == b.len()
            && a.cones().iter().all(|c| b.contains_key(c.key())))
}

/// One violated balancing relation: the cone tau, the covector u in M(tau),
/// and the nonzero sum of <u, n_{sigma,tau}> * c(sigma).
#[derive(Clone, Debug)]
pub struct BalanceViolation {
    pub tau: ConeKey,
    pub u: LatticeVector,
    pub sum: Int,
}

/// Outcome of `verify_weight`.
#[derive(Clone, Debug)]
pub struct WeightReport {
    pub violations: Vec<BalanceViolation>,
}

impl WeightReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the balancing relation: for every cone tau of codimension k+1 and
/// every u in a lattice basis of M(tau) = tau-perp ∩ M,
/// sum over sigma ⊃ tau of <u, n_{sigma,tau}> * c(sigma) must vanish.
pub fn verify_weight(c: &MinkowskiWeight) -> Result<WeightReport, WeightError> {
    let fan = c.fan();
    let n = fan.rank();
    let k = c.codim();
    let mut violations = Vec::new();
    if k >= n {
        // no cones of codimension n+1: relations are vacuous
        return Ok(WeightReport { violations });
    }
    for tau in fan.cones_of_codim(k + 1) {
        // lattice basis of the covectors vanishing on tau
        let mu_basis: Vec<LatticeVector> = if tau.is_zero_cone() {
            (0..n).map(|i| unit(n, i)).collect()
        } else {
            kernel_basis(&Matrix::from_rows(tau.generators().to_vec())?)
        };
        // cones of codimension k having tau as a face, with their normals
        let mut terms: Vec<(LatticeVector, &Int)> = Vec::new();
        for sigma in fan.cones_of_codim(k) {
            if !sigma.contains_cone(tau) {
                continue;
            }
            let pair = ConePair::new(sigma.clone(), tau.clone())?;
            terms.push((lattice_normal(&pair)?, c.value(sigma.key())));
        }
        for u in &mu_basis {
            let mut sum = Int::zero();
            for (normal, value) in &terms {
                sum += dot(u, normal) * *value;
            }
            if !sum.is_zero() {
                violations.push(BalanceViolation {
                    tau: tau.key().clone(),
                    u: u.clone(),
                    sum,
                });
            }
        }
    }
    Ok(WeightReport { violations })
}
