//! Exact integer linear algebra.
//!
//! Row-vector convention throughout: a lattice is spanned by the rows of its
//! basis matrix and a matrix `a` acts on the right, `x ↦ x·a`. Kernels are
//! left kernels `{x : x·a = 0}`.

mod echelon;
mod int;
mod lattice;
mod matrix;
mod normal_form;
mod sparse;

pub(crate) use echelon::{Echelon, Insert};
pub use int::Int;
pub use lattice::{
    kernel_lattice, lattice_combine, lattice_compare, solve_in_span, CombineMode, Lattice, LatticeComparison,
    SpanSolver,
};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, invariant_factors, snf, Hnf, Snf};
pub use sparse::SparseVec;
