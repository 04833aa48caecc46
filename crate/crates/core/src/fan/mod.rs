//! Rational polyhedral cones and complete fans in a rank-n lattice:
//! construction, validation, standard fans for (P^1)^n and P^n,
//! map-compatible refinement, and the lattice data feeding intersection
//! theory.

mod cone;
#[allow(clippy::module_inception)]
mod fan;
mod meet;
mod refine;
mod smooth;
mod standard;

pub use cone::{cone_intersection, make_cone, triangulate, Cone, ConeKey};
pub use fan::{lattice_normal, ConePair, Fan, FanReport};
pub use meet::{translated_meet, Meet};
pub(crate) use meet::{classify_cols_i128, meet_class, MeetClass};
pub use refine::{common_refinement, is_compatible, simplicialize};
pub use smooth::{cone_multiplicity, smooth_subdivide};
pub use standard::{fan_p1n, fan_pn};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("NOT_STRONGLY_CONVEX: generators span a line")]
    NotStronglyConvex,
    #[error("ambient dimensions do not match")]
    DimensionMismatch,
    #[error("SINGULAR: matrix has determinant zero")]
    Singular,
    #[error("DIMENSION_GAP: dim(sigma) must equal dim(tau) + 1")]
    DimensionGap,
    #[error("tau is not a face of sigma")]
    NotAFace,
    #[error("translated_meet requires dim(sigma) + dim(tau) = rank")]
    MeetDimContract,
    #[error("fan must be complete")]
    NotComplete,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
