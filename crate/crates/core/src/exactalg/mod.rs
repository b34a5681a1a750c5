//! Exact rational scalars, dense matrices and the row-reduction engine the
//! rest of the crate is built on.
//!
//! Everything here is exact: ranks, kernels and solutions are computed over
//! the rationals and returned in lowest terms.

mod matrix;
mod rational;
mod sparse;

pub use matrix::{in_span, inverse, kernel_basis, row_basis, rref, solve, RatMatrix};
pub use rational::{q, ParseRationalError, Rational};
pub use sparse::{add_scaled, dense_to_sparse, scale, sparse_to_dense, SparseEchelon, SparseMatrix, SparseVec};
