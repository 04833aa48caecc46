//! Exact integer/rational linear algebra: Smith normal form, lattice
//! indices, minors and compound matrices, characteristic polynomials,
//! eigenvalue moduli, and norm-growth estimates.

mod charpoly;
mod compound;
mod eigen;
mod growth;
mod matrix;
mod snf;

pub use charpoly::{char_poly, CharPoly};
pub use compound::{
    complementary_minor, compound_matrix, k_subsets, minor, subset_complement, IndexSetPair,
};
pub use eigen::{eigenvalue_moduli, EigenModuli};
pub use growth::norm_growth_sequence;
pub use matrix::Matrix;
pub use snf::{
    kernel_basis, lattice_index_sum, saturate_span, smith_normal_form, solve_int_to_rat,
    solve_integer, LatticeIndex, Snf,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry vector has wrong length: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("SINGULAR: matrix has determinant zero")]
    Singular,
    #[error("k = {k} out of range 0..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("row and column selections differ in size")]
    SizeMismatch,
    #[error("index set entries must be strictly increasing and within range")]
    BadIndexSet,
}
