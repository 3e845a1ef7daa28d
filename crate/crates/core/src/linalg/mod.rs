//! Dense exact linear algebra: row reduction, kernels, solves, and a subspace
//! lattice with reproducible tie-breaking.
//!
//! Pivots are always the leftmost eligible column with the topmost nonzero
//! row, free variables are set to zero in particular solutions, and
//! complements are chosen greedily from an echelon basis. Every output is a
//! deterministic function of the input.

mod matrix;
mod subspace;

pub use matrix::{Factorization, Matrix, Solution};
pub use subspace::Subspace;
