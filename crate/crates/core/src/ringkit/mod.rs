//! Monomial quotient rings `k[x_1..x_m]/I` and their finite modules.
//!
//! Resolutions and Tor live here, next to the Koszul complex. Everything
//! except Koszul homology requires an artinian ring; modules over rings with
//! free variables are handled through [`LiftedModule`].

mod koszul;
mod lifted;
mod module;
mod resolution;
mod ring;
pub(crate) mod tor;

pub use koszul::{depth_and_ecodepth, koszul_complex_on, koszul_homology, wedge_basis, DepthReport};
pub use lifted::LiftedModule;
pub use module::{tensor_modules, FgModule};
pub use resolution::{minimal_free_resolution, syzygy_module, MinimalResolution};
pub use ring::{make_ring, Monomial, MonomialRing};
pub use tor::{
    check_strong_tor_independence, first_nonvanishing_tor, tor_dims, tor_one_sided, IndependenceReport, TorWitness,
};
