//! Dynamics of dominant monomial maps: pullback matrices on (P^1)^n
//! (closed form and combinatorial pipeline), dynamical degrees and
//! topological entropy, Cremona-involution degrees, and degree growth
//! on P^n.

mod closed;
mod degrees;
mod growth;
mod pipeline;

pub use closed::pullback_matrix_closed;
pub use degrees::{attach_degree_growth, dynamical_degrees, dynamical_degrees_with_lmax, DegreeReport};
pub use growth::{default_growth_lmax, degree_growth_pn, GrowthFit};
pub use pipeline::{binomials, cremona_degrees, pullback_matrix_pipeline, P1nPipeline, PnPipeline};

use num_traits::Zero;
use thiserror::Error;

use crate::fan::FanError;
use crate::linalg::LinalgError;
use crate::weight::WeightError;
use crate::{Int, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("SINGULAR: monomial maps must have det(psi) != 0")]
    Singular,
    #[error("matrix must be square")]
    NotSquare,
    #[error("k = {k} out of range 0..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("lmax = {0} too small (need at least 3)")]
    LmaxTooSmall(usize),
    #[error("Cremona pipeline produced {computed:?}, expected binomials {expected:?}")]
    CremonaMismatch {
        computed: Vec<Int>,
        expected: Vec<Int>,
    },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A dominant monomial self-map of the n-torus, given by the integer matrix
/// psi acting on exponents. Dominance is exactly det(psi) != 0.
#[derive(Clone, Debug)]
pub struct MonomialMap {
    psi: IntMatrix,
}

impl MonomialMap {
    pub fn new(psi: IntMatrix) -> Result<MonomialMap, DynError> {
        if !psi.is_square() {
            return Err(DynError::NotSquare);
        }
        if psi.det()?.is_zero() {
            return Err(DynError::Singular);
        }
        Ok(MonomialMap { psi })
    }

    pub fn psi(&self) -> &IntMatrix {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.psi.rows()
    }

    /// The map f^l, induced by psi^l.
    pub fn iterate(&self, l: u32) -> MonomialMap {
        MonomialMap {
            psi: self.psi.pow(l).expect("square"),
        }
    }
}

/// A matrix representing f* on A^k((P^1)^n) with respect to the basis
/// {c_alpha : |alpha| = n-k}, subsets in lexicographic order. Entries are
/// nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackMatrix {
    pub k: usize,
    /// Row/column labels: the (n-k)-subsets of {0, .., n-1}, lex order.
    pub subsets: Vec<Vec<usize>>,
    pub matrix: IntMatrix,
}

impl PullbackMatrix {
    pub fn size(&self) -> usize {
        self.subsets.len()
    }
}
