use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use torind::dgalgebra::DgAlgebra;
use torind::dgmod::DgModule;
use torind::ringkit::{
    check_strong_tor_independence, depth_and_ecodepth, tor_dims, FgModule, LiftedModule, MinimalResolution, MonomialRing,
};
use torind::schema::{parse, parse_dg_modules, parse_modules, DgAlgebraDoc, RingDoc};
use torind::theorem::{
    regular_element_reduction, search_independent_families, syzygy_construction, verify_dg_theorem, verify_module_theorem,
    verify_syzygy_bounds, SearchConfig, TheoremReport, Verdict,
};
use torind::{Error, HomologyProfile};

use crate::output::{Failure, Outcome, Report};
use crate::{Command, CommonOpts};

/// Errors split by exit code: bad input (2) or a mathematical failure that
/// still yields a report (1).
enum Problem {
    Input(String),
    Math(Error),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::Malformed(_)
            | Error::DependentColumns
            | Error::AxiomViolation { .. }
            | Error::NotLocal(_)
            | Error::DegreeMismatch { .. }
            | Error::AlgebraMismatch
            | Error::NonArtinian => Problem::Input(e.to_string()),
            other => Problem::Math(other),
        }
    }
}

type Res<T> = std::result::Result<T, Problem>;

#[derive(Default)]
struct Body {
    verdict: Option<Outcome>,
    statement: Option<String>,
    witnesses: Vec<Value>,
    result: Value,
    lines: Vec<String>,
}

struct Ctx<'a> {
    opts: &'a CommonOpts,
    digest: Sha256,
    p: Option<u32>,
}

impl Ctx<'_> {
    fn read(&mut self, path: &Path) -> Res<String> {
        let text = std::fs::read_to_string(path).map_err(|e| Problem::Input(format!("{}: {e}", path.display())))?;
        self.digest.update((text.len() as u64).to_le_bytes());
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn ring(&mut self, path: &Path) -> Res<Arc<MonomialRing>> {
        let text = self.read(path)?;
        let doc: RingDoc = parse(&text).map_err(|e| located(path, e))?;
        let ring = doc.build(self.opts.p).map_err(|e| located(path, e))?;
        self.p = Some(ring.field().characteristic());
        Ok(Arc::new(ring))
    }

    /// Module documents over an artinian ring describe the modules directly;
    /// over a ring with free variables they describe `N_0` over the core ring.
    fn modules(&mut self, ring: &Arc<MonomialRing>, path: &Path) -> Res<Vec<LiftedModule>> {
        let text = self.read(path)?;
        let docs = parse_modules(&text).map_err(|e| located(path, e))?;
        if docs.is_empty() {
            return Err(Problem::Input(format!("{}: no modules", path.display())));
        }
        if ring.is_artinian() {
            docs.iter().map(|d| Ok(LiftedModule::finite(d.build(ring).map_err(|e| located(path, e))?))).collect()
        } else {
            let core = Arc::new(ring.core_ring()?);
            docs.iter()
                .map(|d| {
                    let base = d.build(&core).map_err(|e| located(path, e))?;
                    Ok(LiftedModule::new(ring.clone(), base)?)
                })
                .collect()
        }
    }

    fn algebra(&mut self, path: &Path) -> Res<Arc<DgAlgebra>> {
        let text = self.read(path)?;
        let doc: DgAlgebraDoc = parse(&text).map_err(|e| located(path, e))?;
        let a = doc.build(self.opts.p).map_err(|e| located(path, e))?;
        self.p = Some(a.field().characteristic());
        Ok(Arc::new(a))
    }

    fn dg_modules(&mut self, a: &Arc<DgAlgebra>, path: &Path) -> Res<Vec<DgModule>> {
        let text = self.read(path)?;
        let docs = parse_dg_modules(&text).map_err(|e| located(path, e))?;
        if docs.is_empty() {
            return Err(Problem::Input(format!("{}: no modules", path.display())));
        }
        docs.iter().map(|d| d.build(a).map_err(|e| located(path, e))).collect()
    }

    fn cutoff(&self) -> usize {
        self.opts.cutoff as usize
    }
}

fn located(path: &Path, e: Error) -> Problem {
    Problem::Input(format!("{}: {e}", path.display()))
}

fn dims(p: &HomologyProfile) -> String {
    match (p.inf(), p.sup()) {
        (Some(lo), Some(hi)) => {
            let d: Vec<String> = p.dense(lo, hi).iter().map(ToString::to_string).collect();
            format!("({}) from degree {lo}", d.join(", "))
        }
        _ => "0".to_string(),
    }
}

fn bases(modules: &[LiftedModule]) -> Vec<FgModule> {
    modules.iter().map(|m| m.base().clone()).collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn run(command: &Command, opts: &CommonOpts) -> std::result::Result<Report, Failure> {
    let started = Instant::now();
    let mut ctx = Ctx { opts, digest: Sha256::new(), p: None };
    let body = match dispatch(command, &mut ctx) {
        Ok(b) => b,
        Err(Problem::Input(m)) => return Err(Failure::input(m)),
        Err(Problem::Math(e)) => Body {
            verdict: Some(Outcome::Fail),
            witnesses: vec![json!({ "kind": "error", "message": e.to_string() })],
            lines: vec![format!("failed: {e}")],
            result: Value::Null,
            statement: None,
        },
    };
    Ok(Report {
        command: command_name(command).to_string(),
        p: ctx.p.unwrap_or(torind::DEFAULT_PRIME),
        cutoff: opts.cutoff,
        seed: opts.seed,
        inputs_digest: hex::encode(ctx.digest.finalize()),
        verdict: body.verdict,
        statement: body.statement,
        witnesses: body.witnesses,
        result: body.result,
        lines: body.lines,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::RingInfo { .. } => "ring-info",
        Command::Resolve { .. } => "resolve",
        Command::Tor { .. } => "tor",
        Command::Independence { .. } => "independence",
        Command::DgCheck { .. } => "dg-check",
        Command::Syzygy { .. } => "syzygy",
        Command::VerifyDg { .. } => "verify-dg",
        Command::Verify { .. } => "verify",
        Command::Reduce { .. } => "reduce",
        Command::Search { .. } => "search",
    }
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> Res<Body> {
    match command {
        Command::RingInfo { ring } => ring_info(ctx, ring),
        Command::Resolve { ring, modules } => resolve(ctx, ring, modules),
        Command::Tor { ring, modules } => tor(ctx, ring, modules),
        Command::Independence { ring, modules } => independence(ctx, ring, modules),
        Command::DgCheck { algebra, modules } => dg_check(ctx, algebra, modules.as_deref()),
        Command::Syzygy { algebra, module, r } => syzygy(ctx, algebra, module, *r),
        Command::VerifyDg { algebra, modules } => {
            let a = ctx.algebra(algebra)?;
            let ms = ctx.dg_modules(&a, modules)?;
            Ok(theorem_body(verify_dg_theorem(&ms, ctx.cutoff())?))
        }
        Command::Verify { ring, modules } => {
            let r = ctx.ring(ring)?;
            let ms = ctx.modules(&r, modules)?;
            Ok(theorem_body(verify_module_theorem(&r, &ms, ctx.cutoff())?))
        }
        Command::Reduce { ring, modules, var } => reduce(ctx, ring, modules, *var),
        Command::Search { ring, dim_bound, family_size, budget } => {
            let r = ctx.ring(ring)?;
            let config = SearchConfig { dim_bound: *dim_bound, family_size: *family_size, cutoff: ctx.cutoff(), seed: ctx.opts.seed, budget: *budget };
            let rep = search_independent_families(&r, &config)?;
            let lines = vec![
                format!("ring: {}", r.describe()),
                format!("pool: {} modules, {} families examined{}", rep.pool.len(), rep.examined, if rep.exhaustive { " (exhaustive)" } else { "" }),
                format!("independent families: {}", rep.findings.len()),
            ];
            let witnesses = rep.findings.iter().filter(|f| !f.power_nonzero).map(to_value).collect();
            Ok(Body { verdict: Some(Outcome::from_bool(rep.consistent)), statement: None, witnesses, result: to_value(&rep), lines })
        }
    }
}

fn ring_info(ctx: &mut Ctx, path: &Path) -> Res<Body> {
    let ring = ctx.ring(path)?;
    let d = depth_and_ecodepth(&ring)?;
    let koszul: Vec<String> = d.koszul_homology.dense(0, d.embedding_dim as i64).iter().map(ToString::to_string).collect();
    let mut lines = vec![
        format!("ring: {}", ring.describe()),
        format!("embedding dimension {}", d.embedding_dim),
        format!("Koszul homology dims ({})", koszul.join(", ")),
        format!("depth {}, ecodepth {}", d.depth, d.ecodepth),
    ];
    let length = ring.dim().ok();
    if let Some(n) = length {
        lines.push(format!("length {n}"));
    } else {
        lines.push(format!("free variables {:?}", ring.free_vars()));
    }
    let result = json!({ "ring": ring.describe(), "depth": to_value(&d), "length": length });
    Ok(Body { result, lines, ..Body::default() })
}

fn resolve(ctx: &mut Ctx, ring: &Path, modules: &Path) -> Res<Body> {
    let r = ctx.ring(ring)?;
    let ms = ctx.modules(&r, modules)?;
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        let res = MinimalResolution::build(m.base(), ctx.cutoff())?;
        let pd = res.projective_dimension();
        lines.push(format!(
            "module {i}: betti {:?}{}",
            res.betti(),
            pd.map_or(String::new(), |p| format!(", projective dimension {p}"))
        ));
        out.push(json!({ "module": i, "betti": res.betti(), "projective_dimension": pd, "minimal": res.is_minimal(), "exact": res.is_exact() }));
    }
    Ok(Body { result: Value::Array(out), lines, ..Body::default() })
}

fn tor(ctx: &mut Ctx, ring: &Path, modules: &Path) -> Res<Body> {
    let r = ctx.ring(ring)?;
    let ms = ctx.modules(&r, modules)?;
    if ms.len() != 2 {
        return Err(Problem::Input(format!("tor needs exactly two modules, got {}", ms.len())));
    }
    let t = tor_dims(ms[0].base(), ms[1].base(), ctx.cutoff())?;
    let lines = vec![format!("dim Tor_i for i = 0..={}: {t:?}", ctx.cutoff())];
    Ok(Body { result: json!({ "tor": t }), lines, ..Body::default() })
}

fn independence(ctx: &mut Ctx, ring: &Path, modules: &Path) -> Res<Body> {
    let r = ctx.ring(ring)?;
    let ms = ctx.modules(&r, modules)?;
    let rep = check_strong_tor_independence(&bases(&ms), ctx.cutoff())?;
    let mut lines = vec![format!("{} modules, {} conditions through degree {}", rep.modules, rep.conditions, rep.certified_to)];
    for (i, pd) in &rep.finite_projective_dimension {
        lines.push(format!("module {i} has projective dimension {pd}"));
    }
    let witnesses = rep.witness.iter().map(to_value).collect();
    Ok(Body { verdict: Some(Outcome::from_bool(rep.passed())), statement: None, witnesses, result: to_value(&rep), lines })
}

fn dg_check(ctx: &mut Ctx, algebra: &Path, modules: Option<&Path>) -> Res<Body> {
    let a = match ctx.algebra(algebra) {
        Ok(a) => a,
        Err(Problem::Input(m)) if m.contains("axiom violation") => {
            return Ok(Body {
                verdict: Some(Outcome::Fail),
                witnesses: vec![json!({ "kind": "axiom", "message": m })],
                lines: vec![m],
                ..Body::default()
            })
        }
        Err(e) => return Err(e),
    };
    let h = a.homology_profile();
    let mut lines = vec![
        format!("dim {}, degrees {:?}", a.dim(), a.degrees()),
        format!("H(A) dims {}", dims(&h)),
        format!("s = amp H(A) = {}", h.amp().unwrap_or(0)),
    ];
    let mut witnesses = Vec::new();
    let mut mods = Vec::new();
    if let Some(path) = modules {
        for (i, m) in ctx.dg_modules(&a, path)?.iter().enumerate() {
            let axioms = m.check_axioms();
            let profile = m.homology_profile();
            lines.push(format!("module {i}: dim {}, H dims {}", m.dim(), dims(&profile)));
            if let Err(e) = &axioms {
                witnesses.push(json!({ "kind": "axiom", "module": i, "message": e.to_string() }));
            }
            mods.push(json!({ "module": i, "axioms": axioms.is_ok(), "profile": to_value(&profile) }));
        }
    }
    let result = json!({ "dim": a.dim(), "degrees": a.degrees(), "homology": to_value(&h), "modules": mods });
    Ok(Body { verdict: Some(Outcome::from_bool(witnesses.is_empty())), statement: None, witnesses, result, lines })
}

fn syzygy(ctx: &mut Ctx, algebra: &Path, module: &Path, r: Option<i64>) -> Res<Body> {
    let a = ctx.algebra(algebra)?;
    let ms = ctx.dg_modules(&a, module)?;
    let [k] = ms.as_slice() else {
        return Err(Problem::Input(format!("syzygy needs exactly one module, got {}", ms.len())));
    };
    let r = match r {
        Some(r) => r,
        None => k.homology_profile().sup().ok_or(Problem::Math(Error::ZeroModule))?,
    };
    let pkg = syzygy_construction(k, r)?;
    let bounds = verify_syzygy_bounds(&pkg);
    let hs = pkg.syzygy.homology_profile();
    let lines = vec![
        format!("r = {r}, sup H(K) = {}", pkg.t),
        format!("semibasis degrees {:?}", pkg.semifree_part.degrees()),
        format!("dim L = {}, dim K̃ = {}, dim Syz = {}", pkg.expanded.dim(), pkg.truncation.dim(), pkg.syzygy.dim()),
        format!("H(Syz) dims {}", dims(&hs)),
        format!("checks: {}", check_list(&to_value(&pkg.checks))),
    ];
    let holds = pkg.checks.all() && bounds.holds();
    let mut witnesses = Vec::new();
    if !holds {
        witnesses.push(json!({ "kind": "package", "checks": to_value(&pkg.checks), "bounds": to_value(&bounds) }));
    }
    let result = json!({
        "r": r,
        "semibasis_degrees": pkg.semifree_part.degrees(),
        "syzygy_profile": to_value(&hs),
        "checks": to_value(&pkg.checks),
        "bounds": to_value(&bounds),
    });
    Ok(Body { verdict: Some(Outcome::from_bool(holds)), statement: None, witnesses, result, lines })
}

fn check_list(v: &Value) -> String {
    v.as_object()
        .map(|o| o.iter().map(|(k, v)| format!("{} {}", k.replace('_', " "), if v == &Value::Bool(true) { "holds" } else { "FAILS" })).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

fn reduce(ctx: &mut Ctx, ring: &Path, modules: &Path, var: Option<usize>) -> Res<Body> {
    let r = ctx.ring(ring)?;
    let ms = ctx.modules(&r, modules)?;
    let v = match var {
        Some(v) => v,
        None => *r.free_vars().first().ok_or(Problem::Math(Error::ReductionUnavailable))?,
    };
    let rep = regular_element_reduction(&r, &ms, v, ctx.cutoff())?;
    let lines = vec![
        format!("{} -> {}", rep.ring_before, rep.ring_after),
        format!("depth {} -> {}, ecodepth {} -> {}", rep.depth_before, rep.depth_after, rep.ecodepth_before, rep.ecodepth_after),
        format!("independent after reduction: {}", rep.independence_after.passed()),
    ];
    let witnesses = rep.independence_after.witness.iter().map(to_value).collect();
    Ok(Body { verdict: Some(Outcome::from_bool(rep.holds())), statement: None, witnesses, result: to_value(&rep), lines })
}

fn theorem_body(rep: TheoremReport) -> Body {
    let verdict = match rep.verdict {
        Verdict::Pass => Outcome::Pass,
        Verdict::Fail => Outcome::Fail,
        Verdict::OutOfScope => Outcome::OutOfScope,
    };
    let mut lines: Vec<String> = rep.steps.iter().map(|s| format!("{:<24} {}", s.name, if s.holds { "holds" } else { "FAILS" })).collect();
    if let Some(c) = rep.certified_to {
        lines.push(format!("certified through degree {c}"));
    }
    lines.extend(rep.flags.iter().map(|f| format!("flag: {f}")));
    Body {
        verdict: Some(verdict),
        statement: Some(rep.statement.clone()),
        witnesses: rep.witnesses.iter().map(to_value).collect(),
        result: to_value(&rep),
        lines,
    }
}
