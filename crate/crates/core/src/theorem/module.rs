use std::sync::Arc;

use serde::Serialize;

use super::report::{Step, TheoremReport, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ringkit::{
    check_strong_tor_independence, depth_and_ecodepth, koszul_complex_on, tensor_modules, FgModule, IndependenceReport, LiftedModule,
    Monomial, MonomialRing,
};

/// A monomial of degree `n` outside the ideal, if `m_R^n != 0`.
pub fn power_witness(ring: &MonomialRing, n: usize) -> Option<Monomial> {
    match ring.basis() {
        Ok(basis) => basis.iter().find(|b| b.degree() as usize >= n).cloned(),
        Err(_) => (0..ring.nvars())
            .find(|&a| !ring.gens().iter().any(|g| g.pure_power_var() == Some(a)))
            .map(|a| Monomial((0..ring.nvars()).map(|b| if b == a { n as u32 } else { 0 }).collect())),
    }
}

fn flags_from(independence: &IndependenceReport) -> Vec<String> {
    independence
        .finite_projective_dimension
        .iter()
        .map(|(i, pd)| format!("module {i} has finite projective dimension {pd}"))
        .collect()
}

fn require_independent(independence: &IndependenceReport) -> Result<()> {
    match &independence.witness {
        None => Ok(()),
        Some(w) => Err(Error::PreconditionUnverified(format!(
            "Tor_{}(⊗{:?}, N_{}) has dimension {}",
            w.degree, w.subset, w.against, w.dim
        ))),
    }
}

fn finish(report: &mut TheoremReport) {
    report.verdict = if report.all_steps_hold() {
        Verdict::Pass
    } else if !report.flags.is_empty() {
        Verdict::OutOfScope
    } else {
        Verdict::Fail
    };
}

#[derive(Serialize)]
struct SubsetAmplitude {
    subset: Vec<usize>,
    amp: Option<i64>,
}

/// Depth-zero case: for every `I` (including the empty set),
/// `amp H(K ⊗ ⊗_{i∈I} N_i) <= ecodepth R`, then `n <= ecodepth R`.
pub fn base_case_pipeline(ring: &Arc<MonomialRing>, modules: &[FgModule], top: usize) -> Result<TheoremReport> {
    let depth = depth_and_ecodepth(ring)?;
    if depth.depth > 0 {
        return Err(Error::DepthNonzero(depth.depth));
    }
    if !ring.is_artinian() {
        return Err(Error::NonArtinian);
    }
    if modules.iter().any(|m| m.ring() != ring) {
        return Err(Error::Malformed("modules over a different ring".into()));
    }
    let n = modules.len();
    let e = depth.ecodepth as i64;
    let mut report = TheoremReport::new("module", n, e);
    report.push(Step::new("depth", depth.equality_chain == Some(true), &depth));

    let independence = check_strong_tor_independence(modules, top)?;
    require_independent(&independence)?;
    report.flags = flags_from(&independence);
    report.certify(Some(top as i64));
    report.push(Step::new("independence", true, &independence));

    let mut amplitudes = Vec::new();
    for mask in 0usize..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|a| mask & (1 << a) != 0).collect();
        let mut product = FgModule::free(ring.clone(), 1)?;
        for &a in &subset {
            product = tensor_modules(&product, &modules[a])?;
        }
        let amp = koszul_complex_on(&product).homology().amp();
        if amp.is_some_and(|x| x > e) {
            report.witnesses.push(Witness::AmplitudeExceeded { subset: subset.clone(), amp: amp.unwrap_or(0), bound: e });
        }
        amplitudes.push(SubsetAmplitude { subset, amp });
    }
    let within = amplitudes.iter().all(|s| s.amp.is_none_or(|x| x <= e));
    report.push(Step::new("koszul-amplitudes", within, &amplitudes));

    let power = power_witness(ring, n);
    if let Some(w) = &power {
        report.witnesses.push(Witness::NonzeroPower { monomial: w.to_string(), exponent: n });
    }
    report.push(Step::new("power-nonzero", power.is_some(), power.as_ref().map(|m| m.to_string())));
    report.push(Step::new("bound", n as i64 <= e, serde_json::json!({ "n": n, "ecodepth": e })));
    finish(&mut report);
    Ok(report)
}

/// One reduction `R -> R/x_v R` applied to first syzygies.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub variable: usize,
    pub ring_before: String,
    pub ring_after: String,
    pub depth_before: usize,
    pub depth_after: usize,
    pub ecodepth_before: usize,
    pub ecodepth_after: usize,
    pub depth_drops_by_one: bool,
    pub ecodepth_preserved: bool,
    pub independence_after: IndependenceReport,
    #[serde(skip)]
    pub ring: Arc<MonomialRing>,
    #[serde(skip)]
    pub modules: Vec<LiftedModule>,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.depth_drops_by_one && self.ecodepth_preserved && self.independence_after.passed()
    }
}

fn bases(modules: &[LiftedModule]) -> Vec<FgModule> {
    modules.iter().map(|m| m.base().clone()).collect()
}

/// Replaces each `N_i` by `Ω N_i / x_v Ω N_i` over `R/x_v R`.
pub fn regular_element_reduction(ring: &Arc<MonomialRing>, modules: &[LiftedModule], v: usize, top: usize) -> Result<ReductionReport> {
    if modules.iter().any(|m| m.ring() != ring) {
        return Err(Error::Malformed("modules over a different ring".into()));
    }
    let before = depth_and_ecodepth(ring)?;
    if before.depth == 0 {
        return Err(Error::DepthZero);
    }
    if !ring.free_vars().contains(&v) {
        return Err(Error::NotRegularVariable(v));
    }
    require_independent(&check_strong_tor_independence(&bases(modules), top)?)?;
    let reduced = Arc::new(ring.drop_var(v)?);
    let after = depth_and_ecodepth(&reduced)?;
    let next = modules
        .iter()
        .map(|m| m.first_syzygy().and_then(|s| s.reduce_mod(v, reduced.clone())))
        .collect::<Result<Vec<_>>>()?;
    let independence_after = check_strong_tor_independence(&bases(&next), top)?;
    Ok(ReductionReport {
        variable: v,
        ring_before: ring.describe(),
        ring_after: reduced.describe(),
        depth_before: before.depth,
        depth_after: after.depth,
        ecodepth_before: before.ecodepth,
        ecodepth_after: after.ecodepth,
        depth_drops_by_one: after.depth + 1 == before.depth,
        ecodepth_preserved: after.ecodepth == before.ecodepth,
        independence_after,
        ring: reduced,
        modules: next,
    })
}

/// `n <= ecodepth R`: reduce by free variables down to depth zero, then run
/// the base case.
pub fn verify_module_theorem(ring: &Arc<MonomialRing>, modules: &[LiftedModule], top: usize) -> Result<TheoremReport> {
    if modules.iter().any(|m| m.ring() != ring) {
        return Err(Error::Malformed("modules over a different ring".into()));
    }
    let n = modules.len();
    let depth = depth_and_ecodepth(ring)?;
    let independence = check_strong_tor_independence(&bases(modules), top)?;
    require_independent(&independence)?;

    let mut steps = Vec::new();
    let mut current_ring = ring.clone();
    let mut current = modules.to_vec();
    let mut current_depth = depth.depth;
    while current_depth > 0 {
        let Some(&v) = current_ring.free_vars().first() else {
            return Err(Error::ReductionUnavailable);
        };
        let step = regular_element_reduction(&current_ring, &current, v, top)?;
        current_depth = step.depth_after;
        current_ring = step.ring.clone();
        current = step.modules.clone();
        steps.push(Step::new("reduction", step.holds(), &step));
    }
    let base = base_case_pipeline(&current_ring, &bases(&current), top)?;

    let mut report = TheoremReport::new("module", n, depth.ecodepth as i64);
    report.flags = flags_from(&independence);
    report.flags.extend(base.flags.iter().map(|f| format!("after reduction: {f}")));
    report.certify(Some(top as i64));
    report.push(Step::new("independence", true, &independence));
    report.steps.extend(steps);
    report.steps.extend(base.steps.into_iter().filter(|s| s.name != "power-nonzero" && s.name != "bound").map(|mut s| {
        s.name = format!("base/{}", s.name);
        s
    }));
    report.witnesses.extend(base.witnesses.into_iter().filter(|w| !matches!(w, Witness::NonzeroPower { .. })));

    let power = power_witness(ring, n);
    if let Some(w) = &power {
        report.witnesses.push(Witness::NonzeroPower { monomial: w.to_string(), exponent: n });
    }
    report.push(Step::new("power-nonzero", power.is_some(), power.as_ref().map(|m| m.to_string())));
    report.push(Step::new("bound", n <= depth.ecodepth, serde_json::json!({ "n": n, "ecodepth": depth.ecodepth })));
    finish(&mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::ringkit::make_ring;

    fn ring(nvars: usize, gens: &[&[u32]]) -> Arc<MonomialRing> {
        let f = PrimeField::new(32003).unwrap();
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial(g.to_vec())).collect();
        Arc::new(make_ring(f, nvars, &gens).unwrap())
    }

    #[test]
    fn residue_field_over_hypersurface() {
        let r = ring(1, &[&[2]]);
        let k = FgModule::residue_field(r.clone()).unwrap();
        let rep = base_case_pipeline(&r, &[k], 6).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.bound, 1);
    }

    #[test]
    fn two_cyclic_modules_over_complete_intersection() {
        let r = ring(2, &[&[2, 0], &[0, 2]]);
        let x = FgModule::cyclic(r.clone(), &[Monomial(vec![1, 0])]).unwrap();
        let y = FgModule::cyclic(r.clone(), &[Monomial(vec![0, 1])]).unwrap();
        let rep = base_case_pipeline(&r, &[x, y], 6).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:#?}");
        assert_eq!(rep.bound, 2);
    }

    #[test]
    fn field_is_out_of_scope() {
        let r = ring(0, &[]);
        let k = FgModule::residue_field(r.clone()).unwrap();
        let rep = base_case_pipeline(&r, &[k], 4).unwrap();
        assert_eq!(rep.verdict, Verdict::OutOfScope);
        assert!(!rep.flags.is_empty());
    }

    #[test]
    fn reduction_guards() {
        let art = ring(1, &[&[2]]);
        let k = LiftedModule::finite(FgModule::residue_field(art.clone()).unwrap());
        assert!(matches!(regular_element_reduction(&art, &[k], 0, 4), Err(Error::DepthZero)));
        let r = ring(2, &[&[2, 0]]);
        let core = Arc::new(r.core_ring().unwrap());
        let n = LiftedModule::new(r.clone(), FgModule::residue_field(core).unwrap()).unwrap();
        assert!(matches!(regular_element_reduction(&r, std::slice::from_ref(&n), 0, 4), Err(Error::NotRegularVariable(0))));
        let step = regular_element_reduction(&r, &[n], 1, 4).unwrap();
        assert!(step.holds());
        assert_eq!((step.depth_before, step.depth_after), (1, 0));
    }

    #[test]
    fn module_theorem_with_a_free_variable() {
        let r = ring(2, &[&[2, 0]]);
        let core = Arc::new(r.core_ring().unwrap());
        let n = LiftedModule::new(r.clone(), FgModule::residue_field(core).unwrap()).unwrap();
        let rep = verify_module_theorem(&r, &[n], 6).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{rep:#?}");
        assert!(rep.steps.iter().any(|s| s.name == "reduction"));
        let p = ring(1, &[]);
        let k = LiftedModule::new(p.clone(), FgModule::residue_field(Arc::new(p.core_ring().unwrap())).unwrap()).unwrap();
        assert!(verify_module_theorem(&p, &[k], 4).is_ok());
    }
}
