//! Exact lattice linear algebra, polyhedral fans, Minkowski weights, and the
//! dynamics of dominant monomial maps on toric varieties.
//!
//! The crate is organized around four layers:
//!
//! * [`linalg`] — arbitrary-precision matrices generic over a [`scalar::Scalar`]
//!   entry type: Smith normal form, lattice indices, minors, compound matrices,
//!   characteristic polynomials and eigenvalue moduli.
//! * [`fan`] — rational polyhedral cones and complete fans, standard fans for
//!   (P^1)^n and P^n, map-compatible refinement and simplicialization.
//! * [`weight`] — Minkowski weights (Chow cohomology classes), pullback along
//!   toric morphisms, cup products via the fan displacement rule, and
//!   pushforward through Poincaré-dual bases.
//! * [`dynamics`] — pullback matrices of monomial maps on (P^1)^n (closed form
//!   and combinatorial pipeline), dynamical degrees, topological entropy,
//!   Cremona-involution degrees and degree growth on P^n.

pub mod dynamics;
pub mod fan;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod weight;

/// Arbitrary-precision integer scalar used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar (arbitrary-precision numerator/denominator).
pub type Rat = num_rational::BigRational;

/// Integer matrix with arbitrary-precision entries.
pub type IntMatrix = linalg::Matrix<Int>;
/// Exact rational matrix.
pub type RatMatrix = linalg::Matrix<Rat>;

/// A point of the lattice N ≅ Z^n (or of its dual, when used as a covector).
pub type LatticeVector = Vec<Int>;

pub use dynamics::{DegreeReport, GrowthFit, MonomialMap, PullbackMatrix};
pub use fan::{Cone, ConePair, Fan};
pub use weight::{GenericVector, MinkowskiWeight};
