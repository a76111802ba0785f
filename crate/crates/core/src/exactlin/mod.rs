//! Exact integer linear algebra.
//!
//! Everything here works over ℤ with arbitrary-precision entries where entry growth can
//! happen (dense Smith forms) and checked `i64` arithmetic elsewhere.

mod abgroup;
mod circle;
mod congruence;
mod homology;
mod lattice;
mod matrix;
mod snf;
pub mod sparse;

pub use abgroup::{quotient, AbHom, FpAbGroup, FpPresentation, Subgroup};
pub use circle::{CircleElement, CircleVec};
pub use congruence::{solve_congruence, solve_mod};
pub use homology::{coboundary, dual_of_map, homology, pontryagin_dual, CircleCohomology, Homology};
pub use lattice::{column_span_basis, integer_kernel, solve_integer};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, SnfResult};
pub use sparse::{cokernel, lattice_basis, rank, Cokernel, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("integer overflow in exact elimination")]
    Overflow,
    #[error("maps do not compose to zero: g(f(e_{index})) = {image:?}")]
    NotAComplex { index: usize, image: Vec<i64> },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
