//! Exact linear algebra over a prime field `F_p`.
//!
//! Everything homological in this crate reduces to ranks, kernels and
//! complements computed here. Pivoting is deterministic (smallest row index
//! first), so identical inputs give bit-identical outputs.

mod complex;
mod field;
mod matrix;
mod subspace;

pub use complex::{ChainComplex, HomologyProfile};
pub use field::{PrimeField, Scalar, DEFAULT_PRIME};
pub use matrix::{Echelon, Matrix, Solver};
pub use subspace::{quotient_basis, QuotientBasis, Subquotient, Subspace};

/// Rank of `m` over its field.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Null space of `m`; `dim = cols - rank`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel_basis()
}
