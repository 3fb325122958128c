//! Exact computational homological algebra over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactla`]: dense linear algebra over `F_p` (ranks, kernels, complements).
//! - [`dgalgebra`]: finite-dimensional local DG algebras given by tables.
//! - [`ringkit`]: monomial quotient rings and their finite modules, with
//!   Koszul complexes, minimal free resolutions and Tor.
//! - [`dgmod`]: finite and semifree DG modules with their minimal semifree
//!   resolutions and derived tensor products.
//! - [`theorem`]: the DG syzygy construction with the bound checks built on
//!   it, plus a seeded family search.
//! - [`schema`]: the JSON input documents.

pub mod dgalgebra;
pub mod dgmod;
pub mod error;
pub mod exactla;
pub mod random;
pub mod ringkit;
pub mod schema;
pub mod theorem;

pub use error::{Axiom, Error, Result};
pub use exactla::{HomologyProfile, Matrix, PrimeField, Scalar, Subspace, DEFAULT_PRIME};

/// Default Tor / resolution cutoff.
pub const DEFAULT_CUTOFF: usize = 10;
