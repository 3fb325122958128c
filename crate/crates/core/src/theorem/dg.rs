use std::sync::Arc;

use serde::Serialize;

use super::report::{Step, TheoremReport, Verdict, Witness};
use super::syzygy::syzygy_construction;
use crate::dgalgebra::DgAlgebra;
use crate::dgmod::{check_strong_tor_independence_dg, derived_tensor, minimal_semifree_resolution, DgIndependenceReport, DgModule};
use crate::error::{Error, Result};
use crate::exactla::HomologyProfile;

/// `H(Syz_1 ⊗^L ... ⊗^L Syz_j)` against `m_{H(A)}^{n-j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub n: usize,
    pub j: usize,
    pub profile: HomologyProfile,
    pub certified_to: Option<i64>,
    /// `dim m_{H(A)}^{n-j}`.
    pub ideal_dim: usize,
    /// Whether the inputs themselves pass the DG independence check.
    pub inputs_independent: bool,
    pub holds: bool,
}

fn same_algebra(modules: &[DgModule]) -> Result<Arc<DgAlgebra>> {
    let first = modules.first().ok_or_else(|| Error::Malformed("no modules".into()))?;
    if modules.iter().any(|k| k.algebra() != first.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(first.algebra().clone())
}

/// Requires `m_A^n = 0` and `j <= n`, where `j` is the number of modules.
pub fn annihilation_check(modules: &[DgModule], rs: &[i64], n: usize, cutoff: usize) -> Result<AnnihilationReport> {
    let a = same_algebra(modules)?;
    let j = modules.len();
    if rs.len() != j {
        return Err(Error::Malformed("one cutoff r is needed per module".into()));
    }
    if j > n {
        return Err(Error::Malformed(format!("{j} modules exceed n = {n}")));
    }
    if !a.augmentation_power(n).is_zero() {
        return Err(Error::PowerNotZero(n));
    }
    let inputs_independent = check_strong_tor_independence_dg(modules, cutoff)?.passed();
    let syz = modules.iter().zip(rs).map(|(k, &r)| syzygy_construction(k, r).map(|p| p.syzygy)).collect::<Result<Vec<_>>>()?;
    let h = a.homology_algebra()?;
    let ideal = h.max_ideal_power(n - j);
    if syz.iter().any(DgModule::is_zero) {
        return Ok(AnnihilationReport {
            n,
            j,
            profile: HomologyProfile::zero(),
            certified_to: None,
            ideal_dim: ideal.dim(),
            inputs_independent,
            holds: true,
        });
    }
    let t = derived_tensor(&syz, cutoff)?;
    let holds = t.module.homology_annihilated_by(&h, &ideal, t.certified_to);
    Ok(AnnihilationReport { n, j, profile: t.profile, certified_to: t.certified_to, ideal_dim: ideal.dim(), inputs_independent, holds })
}

#[derive(Serialize)]
struct TransportDetail {
    module: usize,
    sup: i64,
    profile: HomologyProfile,
    transported: HomologyProfile,
}

fn min_certified(r: &DgIndependenceReport) -> Option<i64> {
    r.subsets.iter().filter_map(|p| p.certified_to).min()
}

fn amplitude_witness(r: &DgIndependenceReport) -> Option<Witness> {
    let w = r.witness.as_ref()?;
    let p = r.subsets.iter().find(|p| &p.subset == w)?;
    Some(Witness::AmplitudeExceeded { subset: w.clone(), amp: p.amp.unwrap_or(0), bound: r.s })
}

/// `n <= amp H(A)` for `n` non-perfect, strongly Tor-independent DG modules.
///
/// The modules are moved to `A' = τ_{≤s}(A)` through `τ_{≤c}(A' ⊗_A F^(c+1))`
/// with `F` a minimal resolution and `c = sup H(K)`. Over `A'`, which lives in
/// degrees `0..=s`, a nonzero `n`-fold product of positive-degree elements
/// forces `n <= s`.
pub fn verify_dg_theorem(modules: &[DgModule], cutoff: usize) -> Result<TheoremReport> {
    let a = same_algebra(modules)?;
    let n = modules.len();
    let ha = a.homology_profile();
    let s = ha.amp().unwrap_or(0);
    let mut report = TheoremReport::new("dg", n, s);

    for (i, k) in modules.iter().enumerate() {
        let Some(inf) = k.homology_profile().inf() else {
            return Err(Error::ZeroModule);
        };
        let res = minimal_semifree_resolution(k, cutoff as i64 + inf)?;
        if res.is_complete() {
            return Err(Error::PerfectInput(i));
        }
        report.witnesses.push(Witness::ResolutionGrowth {
            module: i,
            cutoff: res.certificate.cutoff,
            semibasis_degrees: res.certificate.semibasis_degrees.clone(),
        });
    }

    let independence = check_strong_tor_independence_dg(modules, cutoff)?;
    if let Some(w) = &independence.witness {
        return Err(Error::PreconditionUnverified(format!("subset {w:?} exceeds amplitude {s} through cutoff {cutoff}")));
    }
    report.certify(min_certified(&independence));
    report.push(Step::new("independence", true, &independence));

    let power = a.nonzero_power_witness(n);
    if let Some(w) = &power {
        report.witnesses.push(Witness::NonzeroProduct { factors: w.iter().map(|&i| a.label(i).to_string()).collect() });
    }
    report.push(Step::new("power-nonzero", power.is_some(), &power));

    let truncated = a.soft_truncate(s as usize)?;
    let a1 = Arc::new(truncated.algebra.clone());
    let same_homology = a1.homology_profile() == ha;
    report.push(Step::new("truncated-algebra", same_homology && a1.top_degree() as i64 <= s, a1.homology_profile()));

    let mut moved = Vec::with_capacity(n);
    let mut details = Vec::new();
    let mut preserved = true;
    for (i, k) in modules.iter().enumerate() {
        let hk = k.homology_profile();
        let c = hk.sup().expect("nonzero homology");
        let res = minimal_semifree_resolution(k, c + 1)?;
        let f = res.semifree.filtration(c + 1).base_change(&truncated)?;
        let k1 = f.expand().truncate_unchecked(c)?.module;
        let transported = k1.homology_profile();
        preserved &= transported == hk;
        details.push(TransportDetail { module: i, sup: c, profile: hk, transported });
        moved.push(k1);
    }
    report.push(Step::new("transport", preserved, &details));

    let power1 = a1.nonzero_power_witness(n);
    report.push(Step::new("power-nonzero-truncated", power1.is_some(), &power1));
    let independence1 = check_strong_tor_independence_dg(&moved, cutoff)?;
    report.certify(min_certified(&independence1));
    if let Some(w) = amplitude_witness(&independence1) {
        report.witnesses.push(w);
    }
    report.push(Step::new("independence-truncated", independence1.passed(), &independence1));

    let bound_holds = n as i64 <= s;
    report.push(Step::new("bound", bound_holds, serde_json::json!({ "n": n, "s": s })));
    report.verdict = if report.all_steps_hold() { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn annihilation_over_exterior() {
        let a = Arc::new(DgAlgebra::exterior(field(), 1));
        let k = DgModule::residue_field(a.clone());
        let r = annihilation_check(std::slice::from_ref(&k), &[0], 2, 6).unwrap();
        assert!(r.holds);
        assert!(matches!(annihilation_check(&[k], &[0], 1, 6), Err(Error::PowerNotZero(1))));
    }

    #[test]
    fn single_residue_field() {
        let a = Arc::new(DgAlgebra::exterior(field(), 1));
        let k = DgModule::residue_field(a.clone());
        let rep = verify_dg_theorem(std::slice::from_ref(&k), 6).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:#?}");
        assert_eq!(rep.bound, 1);
        assert!(matches!(verify_dg_theorem(&[k.clone(), k], 6), Err(Error::PreconditionUnverified(_))));
        let am = DgModule::from_algebra(a);
        assert!(matches!(verify_dg_theorem(&[am], 6), Err(Error::PerfectInput(0))));
    }
}
