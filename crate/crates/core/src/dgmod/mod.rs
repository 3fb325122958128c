//! DG modules over a finite DG algebra: finite modules on explicit bases,
//! semifree modules on a finite semibasis, minimal semifree resolutions,
//! derived tensor products and the DG strong Tor-independence predicate.
//!
//! Signs follow the Koszul rule: `∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y`,
//! and moving `a` past `e` costs `(-1)^{|a||e|}`.

mod derived;
mod finite;
mod resolve;
mod semifree;

pub use derived::{check_strong_tor_independence_dg, derived_tensor, derived_tensor_profile, DerivedTensor, DgIndependenceReport, SubsetProfile};
pub use finite::{tensor_finite, DgModule, ModuleHomology, TruncatedModule};
pub use resolve::{minimal_semifree_resolution, ResolutionCertificate, SemifreeResolution};
pub use semifree::{tensor_bounds, tensor_over_a, BoundsReport, SemifreeModule, SingleDegreeReport};
