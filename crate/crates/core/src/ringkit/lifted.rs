use std::sync::Arc;

use super::module::FgModule;
use super::resolution::syzygy_module;
use super::ring::MonomialRing;
use crate::error::{Error, Result};

/// A module `N_0 ⊗_k k[x_v : v free]` over a ring `R = core[free variables]`,
/// where `N_0` is a finite module over the artinian core ring.
///
/// Over an artinian ring there are no free variables and this is just `N_0`.
/// Tor over `R` of such modules equals Tor over the core of the `N_0`, since
/// adjoining polynomial variables is flat.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedModule {
    ring: Arc<MonomialRing>,
    base: FgModule,
}

impl LiftedModule {
    pub fn new(ring: Arc<MonomialRing>, base: FgModule) -> Result<Self> {
        let core = ring.core_ring()?;
        if **base.ring() != core {
            return Err(Error::Malformed(format!(
                "base module lives over {}, expected the core ring {}",
                base.ring().describe(),
                core.describe()
            )));
        }
        Ok(LiftedModule { ring, base })
    }

    pub fn finite(module: FgModule) -> Self {
        LiftedModule { ring: module.ring().clone(), base: module }
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        &self.ring
    }

    pub fn base(&self) -> &FgModule {
        &self.base
    }

    /// The first syzygy over `R`, which is the lift of the first syzygy of `N_0`.
    pub fn first_syzygy(&self) -> Result<LiftedModule> {
        let (syz, _) = syzygy_module(&self.base)?;
        Ok(LiftedModule { ring: self.ring.clone(), base: syz })
    }

    /// `N / x_v N` over `R / x_v R` for a free variable `x_v`.
    pub fn reduce_mod(&self, v: usize, reduced: Arc<MonomialRing>) -> Result<LiftedModule> {
        if !self.ring.free_vars().contains(&v) {
            return Err(Error::NotRegularVariable(v));
        }
        LiftedModule::new(reduced, self.base.clone())
    }
}
