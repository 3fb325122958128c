use rayon::prelude::*;
use serde::Serialize;

use super::finite::DgModule;
use super::resolve::{minimal_semifree_resolution, SemifreeResolution};
use super::semifree::tensor_over_a;
use crate::error::{Error, Result};
use crate::exactla::HomologyProfile;

/// `K_1 ⊗^L ... ⊗^L K_n` computed as `F_1 ⊗ (F_2 ⊗ ... (F_{n-1} ⊗ K_n))` with
/// truncated minimal resolutions `F_j`.
#[derive(Clone, Debug)]
pub struct DerivedTensor {
    pub module: DgModule,
    /// Homology in the certified range only.
    pub profile: HomologyProfile,
    /// Last degree in which the homology is exact; `None` when every
    /// resolution involved is complete, so all degrees are exact.
    pub certified_to: Option<i64>,
}

/// Resolution of `K` through semibasis degree `D + inf H(K)`.
pub(crate) fn resolve_for_cutoff(k: &DgModule, cutoff: usize) -> Result<Option<SemifreeResolution>> {
    match k.homology_profile().inf() {
        None => Ok(None),
        Some(inf) => minimal_semifree_resolution(k, cutoff as i64 + inf).map(Some),
    }
}

/// Tensors the factors given resolutions of all but the last.
///
/// The inclusion of the truncated resolution `F^(r)` into the full one is an
/// isomorphism of complexes through degree `r + lo(X)` after tensoring with
/// `X`, where `lo(X)` bounds the degrees of `X` from below. Chaining these
/// bounds gives the certified range.
pub(crate) fn tensor_with_resolutions(resolutions: &[Option<&SemifreeResolution>], last: &DgModule) -> Result<DerivedTensor> {
    let mut x = last.clone();
    let mut lo_x = last.degree_range().map(|r| r.0);
    let mut agree: Option<i64> = None;
    for res in resolutions.iter().rev() {
        let Some(res) = res else {
            // A factor with zero homology makes the whole product acyclic.
            return Ok(DerivedTensor { module: DgModule::zero(last.algebra().clone()), profile: HomologyProfile::zero(), certified_to: None });
        };
        let f = &res.semifree;
        let lo_f = f.degrees().iter().copied().min();
        if let (Some(c), Some(l)) = (agree, lo_f) {
            agree = Some(c + l);
        }
        if !res.certificate.complete {
            if let Some(l) = lo_x {
                let bound = res.certificate.cutoff + l;
                agree = Some(agree.map_or(bound, |c| c.min(bound)));
            }
        }
        x = tensor_over_a(f, &x)?;
        lo_x = match (lo_x, lo_f) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    let full = x.homology_profile();
    let certified_to = agree.map(|c| c - 1);
    let profile = match certified_to {
        Some(c) => full.below(c + 1),
        None => full,
    };
    Ok(DerivedTensor { module: x, profile, certified_to })
}

/// `K_1 ⊗^L ... ⊗^L K_n`, each `K_j` with `j < n` resolved through degree
/// `D + inf H(K_j)`.
pub fn derived_tensor(factors: &[DgModule], cutoff: usize) -> Result<DerivedTensor> {
    let (last, rest) = factors.split_last().ok_or(Error::Malformed("empty tensor product".into()))?;
    if rest.iter().any(|k| k.algebra() != last.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let resolutions = rest.iter().map(|k| resolve_for_cutoff(k, cutoff)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<Option<&SemifreeResolution>> = resolutions.iter().map(Option::as_ref).collect();
    tensor_with_resolutions(&refs, last)
}

/// Profile of `X ⊗^L Y` with its certified range.
pub fn derived_tensor_profile(x: &DgModule, y: &DgModule, cutoff: usize) -> Result<(HomologyProfile, Option<i64>)> {
    let t = derived_tensor(&[x.clone(), y.clone()], cutoff)?;
    Ok((t.profile, t.certified_to))
}

/// One subset in the DG independence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetProfile {
    pub subset: Vec<usize>,
    pub profile: HomologyProfile,
    pub certified_to: Option<i64>,
    pub amp: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DgIndependenceReport {
    pub modules: usize,
    pub s: i64,
    pub cutoff: usize,
    pub subsets: Vec<SubsetProfile>,
    /// First failing subset in bitmask order.
    pub witness: Option<Vec<usize>>,
}

impl DgIndependenceReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// For every nonempty `I ⊆ {0..n-1}`, `amp H(⊗^L_{i∈I} K_i) <= s` on the
/// certified range, with `s = amp H(A)`. Singletons are included.
pub fn check_strong_tor_independence_dg(modules: &[DgModule], cutoff: usize) -> Result<DgIndependenceReport> {
    let n = modules.len();
    let Some(first) = modules.first() else {
        return Err(Error::Malformed("no modules".into()));
    };
    if modules.iter().any(|k| k.algebra() != first.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if n >= 20 {
        return Err(Error::Malformed(format!("{n} modules is too many for subset enumeration")));
    }
    let s = first.algebra().homology_profile().amp().unwrap_or(0);
    let resolutions: Vec<Option<SemifreeResolution>> =
        modules[..n - 1].par_iter().map(|k| resolve_for_cutoff(k, cutoff)).collect::<Result<Vec<_>>>()?;
    let subsets: Vec<SubsetProfile> = (1usize..1 << n)
        .into_par_iter()
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|a| mask & (1 << a) != 0).collect();
            let (&last, rest) = subset.split_last().expect("nonempty");
            let refs: Vec<Option<&SemifreeResolution>> = rest.iter().map(|&i| resolutions[i].as_ref()).collect();
            let t = tensor_with_resolutions(&refs, &modules[last])?;
            let amp = t.profile.amp();
            Ok(SubsetProfile { subset, holds: amp.is_none_or(|a| a <= s), amp, profile: t.profile, certified_to: t.certified_to })
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = subsets.iter().find(|p| !p.holds).map(|p| p.subset.clone());
    Ok(DgIndependenceReport { modules: n, s, cutoff, subsets, witness })
}
