use serde::Serialize;

use crate::dgmod::{
    check_strong_tor_independence_dg, derived_tensor, minimal_semifree_resolution, BoundsReport, DgIndependenceReport, DgModule,
    SemifreeModule, SemifreeResolution,
};
use crate::error::{Error, Result};
use crate::exactla::{HomologyProfile, Matrix, Subspace};

/// `0 -> Syz -> L -> K̃ -> 0` built from a minimal resolution `F` of `K`:
/// `L = F^(r)`, `K̃ = τ_{≤r}(F)`, `π` the composite `L ⊆ F -> K̃`, and
/// `Syz = ker π` with inclusion `α`.
#[derive(Clone, Debug)]
pub struct SyzygyPackage {
    pub input: DgModule,
    pub r: i64,
    /// `sup H(K)`.
    pub t: i64,
    pub resolution: SemifreeResolution,
    pub semifree_part: SemifreeModule,
    pub expanded: DgModule,
    pub truncation: DgModule,
    pub pi: Matrix,
    pub syzygy: DgModule,
    pub alpha: Matrix,
    pub checks: PackageChecks,
}

/// Structural invariants of a package.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackageChecks {
    /// `dim Syz_d + dim K̃_d = dim L_d` in every degree.
    pub rank_additivity: bool,
    /// `Im α ⊆ A_+ L`.
    pub image_in_augmentation_ideal: bool,
    /// `H(K̃) = H(K)` dimensionwise.
    pub profile_matches: bool,
    /// Exactness of the homology long exact sequence, checked by ranks.
    pub long_exact_sequence: bool,
}

impl PackageChecks {
    pub fn all(&self) -> bool {
        self.rank_additivity && self.image_in_augmentation_ideal && self.profile_matches && self.long_exact_sequence
    }
}

/// Rank of `H_d(g)` for a chain map `g: X -> Y`.
pub(crate) fn homology_rank(g: &Matrix, x: &DgModule, y: &DgModule, d: i64) -> usize {
    let f = x.field();
    let idx = x.indices_in_degree(d);
    let lower = x.indices_in_degree(d - 1);
    let local = x.diff().block(&lower, &idx).kernel_basis();
    let cycles: Vec<Vec<u32>> = (0..local.dim())
        .map(|c| {
            let v = local.vector(c);
            let mut full = vec![0; x.dim()];
            for (t, &i) in idx.iter().enumerate() {
                full[i] = v[t];
            }
            g.mul_vec(&full)
        })
        .collect();
    let bvecs: Vec<Vec<u32>> = y.indices_in_degree(d + 1).into_iter().map(|j| y.diff().column(j)).collect();
    let b = Subspace::span_vectors(f, y.dim(), &bvecs);
    let image = Subspace::span_vectors(f, y.dim(), &cycles).sum(&b);
    image.dim() - b.dim()
}

/// Builds the package and checks its invariants. Requires `r >= sup H(K)`.
pub fn syzygy_construction(k: &DgModule, r: i64) -> Result<SyzygyPackage> {
    let hk = k.homology_profile();
    let Some(t) = hk.sup() else {
        return Err(Error::ZeroModule);
    };
    if r < t {
        return Err(Error::CutoffTooSmall { r, sup: t });
    }
    let resolution = minimal_semifree_resolution(k, r + 1)?;
    let full = resolution.semifree.expand();
    let tau = full.truncate_unchecked(r)?;
    let semifree_part = resolution.semifree.filtration(r);
    let expanded = semifree_part.expand();
    let inclusion: Vec<usize> = (0..expanded.dim()).collect();
    let pi = tau.projection.select_cols(&inclusion);
    let kernel = pi.kernel_basis();
    let syzygy = expanded.submodule(&kernel)?;
    let alpha = kernel.basis().clone();
    let truncation = tau.module;

    let n = k.algebra().dim();
    let unit = k.algebra().unit();
    let rank_additivity = expanded.dims_by_degree().iter().all(|(&d, &dim_l)| {
        syzygy.indices_in_degree(d).len() + truncation.indices_in_degree(d).len() == dim_l
    }) && truncation.dims_by_degree().keys().all(|d| !expanded.indices_in_degree(*d).is_empty());
    let image_in_augmentation_ideal = (0..alpha.cols()).all(|c| (0..semifree_part.len()).all(|j| alpha.get(j * n + unit, c) == 0));
    let profile_matches = truncation.homology_profile() == hk;

    let (lo, hi) = expanded.degree_range().unwrap_or((0, -1));
    let h_l = expanded.homology_profile();
    let h_s = syzygy.homology_profile();
    let h_t = truncation.homology_profile();
    let rank_alpha = |d: i64| homology_rank(&alpha, &syzygy, &expanded, d);
    let rank_pi = |d: i64| homology_rank(&pi, &expanded, &truncation, d);
    let long_exact_sequence = (lo..=hi + 1).all(|d| {
        let (ra, rp) = (rank_alpha(d), rank_pi(d));
        let at_l = h_l.dim(d) == ra + rp;
        let at_syz = h_t.dim(d).checked_sub(rp).is_some_and(|delta| h_s.dim(d - 1) == delta + rank_alpha(d - 1));
        at_l && at_syz
    });
    let checks = PackageChecks { rank_additivity, image_in_augmentation_ideal, profile_matches, long_exact_sequence };
    Ok(SyzygyPackage { input: k.clone(), r, t, resolution, semifree_part, expanded, truncation, pi, syzygy, alpha, checks })
}

/// Bounds for `H(Syz)`: `inf >= r`, `sup <= s + r`, `amp <= s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyBoundsReport {
    /// `amp H(K) <= s`, the hypothesis under which the bounds are claimed.
    pub precondition: bool,
    pub bounds: BoundsReport,
}

impl SyzygyBoundsReport {
    pub fn holds(&self) -> bool {
        !self.precondition || self.bounds.holds
    }
}

fn amplitude_s(k: &DgModule) -> i64 {
    k.algebra().homology_profile().amp().unwrap_or(0)
}

pub fn verify_syzygy_bounds(pkg: &SyzygyPackage) -> SyzygyBoundsReport {
    let s = amplitude_s(&pkg.input);
    let precondition = pkg.input.homology_profile().amp().is_none_or(|a| a <= s);
    let bounds = BoundsReport::new(pkg.syzygy.homology_profile(), pkg.r, s + pkg.r, s);
    SyzygyBoundsReport { precondition, bounds }
}

/// `Syz ⊗^L Y` against `inf H(Y) + r`, `sup H(Y) + r` and `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyIndependenceReport {
    pub profile: HomologyProfile,
    pub certified_to: Option<i64>,
    pub bounds: BoundsReport,
}

pub fn verify_syzygy_independence(pkg: &SyzygyPackage, y: &DgModule, cutoff: usize) -> Result<SyzygyIndependenceReport> {
    let pre = check_strong_tor_independence_dg(&[pkg.input.clone(), y.clone()], cutoff)?;
    if let Some(w) = pre.witness {
        return Err(Error::PreconditionUnverified(format!("input pair fails independence at subset {w:?}")));
    }
    let s = amplitude_s(&pkg.input);
    let hy = y.homology_profile();
    let (Some(iy), Some(sy)) = (hy.inf(), hy.sup()) else {
        return Err(Error::ZeroModule);
    };
    if pkg.syzygy.is_zero() {
        let bounds = BoundsReport::new(HomologyProfile::zero(), iy + pkg.r, sy + pkg.r, s);
        return Ok(SyzygyIndependenceReport { profile: HomologyProfile::zero(), certified_to: None, bounds });
    }
    let t = derived_tensor(&[pkg.syzygy.clone(), y.clone()], cutoff)?;
    let bounds = BoundsReport::new(t.profile.clone(), iy + pkg.r, sy + pkg.r, s);
    Ok(SyzygyIndependenceReport { profile: t.profile, certified_to: t.certified_to, bounds })
}

/// Independence of `K_1', ..., K_m', K_{m+1}, ..., K_n` for each `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub stages: Vec<DgIndependenceReport>,
    pub holds: bool,
}

pub fn batch_syzygy_independence(modules: &[DgModule], rs: &[i64], cutoff: usize) -> Result<BatchReport> {
    if modules.len() != rs.len() {
        return Err(Error::Malformed("one cutoff r is needed per module".into()));
    }
    let pre = check_strong_tor_independence_dg(modules, cutoff)?;
    if let Some(w) = pre.witness {
        return Err(Error::PreconditionUnverified(format!("inputs fail independence at subset {w:?}")));
    }
    let syz = modules.iter().zip(rs).map(|(k, &r)| syzygy_construction(k, r).map(|p| p.syzygy)).collect::<Result<Vec<_>>>()?;
    let mut stages = Vec::new();
    for m in 1..=modules.len() {
        let family: Vec<DgModule> = syz[..m].iter().chain(&modules[m..]).filter(|x| !x.is_zero()).cloned().collect();
        if family.is_empty() {
            continue;
        }
        stages.push(check_strong_tor_independence_dg(&family, cutoff)?);
    }
    let holds = stages.iter().all(DgIndependenceReport::passed);
    Ok(BatchReport { stages, holds })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dgalgebra::DgAlgebra;
    use crate::exactla::PrimeField;

    fn lambda() -> Arc<DgAlgebra> {
        Arc::new(DgAlgebra::exterior(PrimeField::new(32003).unwrap(), 1))
    }

    #[test]
    fn residue_field_package() {
        let a = lambda();
        let k = DgModule::residue_field(a.clone());
        let pkg = syzygy_construction(&k, 0).unwrap();
        assert!(pkg.checks.all(), "{:?}", pkg.checks);
        assert_eq!(pkg.semifree_part.degrees(), &[0]);
        assert_eq!(pkg.truncation.dim(), 1);
        assert_eq!(pkg.syzygy.degrees(), &[1]);
        let b = verify_syzygy_bounds(&pkg);
        assert!(b.precondition && b.bounds.holds);
        assert_eq!(b.bounds.profile.inf(), Some(1));
        assert_eq!(b.bounds.profile.amp(), Some(0));
    }

    #[test]
    fn free_module_has_zero_syzygy() {
        let a = lambda();
        let am = DgModule::from_algebra(a);
        let pkg = syzygy_construction(&am, 1).unwrap();
        assert!(pkg.checks.all());
        assert!(pkg.syzygy.is_zero());
        assert!(verify_syzygy_bounds(&pkg).holds());
        assert!(matches!(syzygy_construction(&am, 0), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn syzygy_against_free_modules() {
        let a = lambda();
        let k = DgModule::residue_field(a.clone());
        let am = DgModule::from_algebra(a.clone());
        let y = am.direct_sum(&am).unwrap();
        let pkg = syzygy_construction(&k, 0).unwrap();
        let rep = verify_syzygy_independence(&pkg, &y, 6).unwrap();
        assert!(rep.bounds.holds);
        let rep = verify_syzygy_independence(&pkg, &am, 6).unwrap();
        assert_eq!(rep.profile, verify_syzygy_bounds(&pkg).bounds.profile);
        assert!(matches!(verify_syzygy_independence(&pkg, &k, 6), Err(Error::PreconditionUnverified(_))));
    }

    #[test]
    fn batch_over_a_single_module() {
        let a = lambda();
        let k = DgModule::residue_field(a.clone());
        let rep = batch_syzygy_independence(std::slice::from_ref(&k), &[0], 6).unwrap();
        assert!(rep.holds);
        assert!(matches!(batch_syzygy_independence(&[k.clone(), k], &[0, 0], 6), Err(Error::PreconditionUnverified(_))));
    }
}
