use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::module::power_witness;
use crate::error::{Error, Result};
use crate::random::random_in_max_ideal;
use crate::ringkit::tor::scan_tor;
use crate::ringkit::{check_strong_tor_independence, syzygy_module, FgModule, MinimalResolution, Monomial, MonomialRing};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest `k`-dimension of a candidate module.
    pub dim_bound: usize,
    /// Family size `n`.
    pub family_size: usize,
    /// Tor is checked in degrees `1..=cutoff`.
    pub cutoff: usize,
    pub seed: u64,
    /// Maximum number of families examined.
    pub budget: usize,
}

/// A family passing the independence check through the cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub members: Vec<usize>,
    /// `m_R^n != 0`, a necessary condition for `n` such modules.
    pub power_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub ring: String,
    pub seed: u64,
    pub pool: Vec<String>,
    /// Families examined.
    pub examined: usize,
    /// Whether every family of the pool was examined.
    pub exhaustive: bool,
    pub findings: Vec<Finding>,
    /// Every finding has `m_R^n != 0`.
    pub consistent: bool,
}

fn describe(m: &FgModule, origin: &str) -> String {
    format!("{origin} (dim {})", m.dim())
}

/// Candidate pool: monomial cyclic modules `R/J` with `J` generated by at
/// most two standard monomials, followed by seeded random presentations with
/// one or two generators and relations in `m_R`. Free, zero, oversized and
/// duplicate modules are dropped.
pub fn candidate_pool(ring: &Arc<MonomialRing>, dim_bound: usize, seed: u64) -> Result<Vec<(String, FgModule)>> {
    let basis: Vec<Monomial> = ring.basis()?.iter().filter(|m| m.degree() > 0).cloned().collect();
    let mut pool: Vec<(String, FgModule)> = Vec::new();
    let push = |label: String, m: FgModule, pool: &mut Vec<(String, FgModule)>| -> Result<()> {
        if m.is_zero() || m.dim() > dim_bound || pool.iter().any(|(_, q)| q.dim() == m.dim() && q.actions() == m.actions()) {
            return Ok(());
        }
        if syzygy_module(&m)?.0.is_zero() {
            return Ok(());
        }
        pool.push((describe(&m, &label), m));
        Ok(())
    };
    for (i, a) in basis.iter().enumerate() {
        push(format!("R/({a})"), FgModule::cyclic(ring.clone(), std::slice::from_ref(a))?, &mut pool)?;
        for b in &basis[i + 1..] {
            push(format!("R/({a},{b})"), FgModule::cyclic(ring.clone(), &[a.clone(), b.clone()])?, &mut pool)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..64 {
        let gens = 1 + t % 2;
        let rels = rng.gen_range(1..=3);
        let relations = (0..rels)
            .map(|_| (0..gens).map(|_| random_in_max_ideal(&mut rng, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = FgModule::from_presentation(ring.clone(), gens, &relations)?;
        push(format!("random presentation #{t}"), m, &mut pool)?;
    }
    Ok(pool)
}

/// Every size-`n` multiset of `0..pool`, in lexicographic order.
fn all_families(pool: usize, n: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    if pool == 0 {
        return Some(out);
    }
    loop {
        if out.len() == limit {
            return None;
        }
        out.push(current.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return Some(out);
            }
            k -= 1;
            if current[k] + 1 < pool {
                current[k] += 1;
                for l in k + 1..n {
                    current[l] = current[k];
                }
                break;
            }
        }
    }
}

/// `ok[i][j]`: `Tor_t(N_i, N_j) = 0` and `Tor_t(N_j, N_i) = 0` for
/// `1 <= t <= cutoff`, each computed from the resolution of the second
/// argument. Degrees are checked in increasing order and a resolution is only
/// extended while some condition that needs it is still open.
fn pairwise_independence(modules: &[FgModule], cutoff: usize) -> Result<Vec<Vec<bool>>> {
    let m = modules.len();
    let mut resolutions = modules.iter().map(MinimalResolution::new).collect::<Result<Vec<_>>>()?;
    let mut open: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    for t in 1..=cutoff {
        let mut needed = vec![false; m];
        for &(_, j) in &open {
            needed[j] = true;
        }
        resolutions
            .par_iter_mut()
            .zip(needed.par_iter())
            .filter(|(_, &need)| need)
            .try_for_each(|(r, _)| r.extend_to(t + 1))?;
        open = open.into_par_iter().filter(|&(i, j)| scan_tor(&resolutions[j], &modules[i], t, t).is_none()).collect();
        if open.is_empty() {
            break;
        }
    }
    let mut passed = vec![vec![false; m]; m];
    for &(i, j) in &open {
        passed[i][j] = true;
    }
    Ok((0..m).map(|i| (0..m).map(|j| passed[i][j] && passed[j][i]).collect()).collect())
}

/// Seeded search for strongly Tor-independent families of non-free modules.
pub fn search_independent_families(ring: &Arc<MonomialRing>, config: &SearchConfig) -> Result<SearchReport> {
    if config.family_size == 0 {
        return Err(Error::Malformed("family size must be positive".into()));
    }
    let pool = candidate_pool(ring, config.dim_bound, config.seed)?;
    let n = config.family_size;
    let (families, exhaustive) = match all_families(pool.len(), n, config.budget) {
        Some(all) => (all, true),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
            let mut seen = std::collections::BTreeSet::new();
            let mut attempts = 0;
            while seen.len() < config.budget && attempts < 20 * config.budget {
                attempts += 1;
                let mut f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..pool.len())).collect();
                f.sort_unstable();
                seen.insert(f);
            }
            let mut v: Vec<Vec<usize>> = seen.into_iter().collect();
            v.shuffle(&mut rng);
            (v, false)
        }
    };
    let modules: Vec<FgModule> = pool.iter().map(|(_, m)| m.clone()).collect();
    let pair_ok = pairwise_independence(&modules, config.cutoff)?;
    let power_nonzero = power_witness(ring, n).is_some();
    let findings: Vec<Finding> = families
        .par_iter()
        .map(|f| -> Result<Option<Finding>> {
            if (0..n).any(|a| (0..n).any(|b| a != b && !pair_ok[f[a]][f[b]])) {
                return Ok(None);
            }
            let members: Vec<FgModule> = f.iter().map(|&i| modules[i].clone()).collect();
            if n > 2 && !check_strong_tor_independence(&members, config.cutoff)?.passed() {
                return Ok(None);
            }
            Ok(Some(Finding { members: f.clone(), power_nonzero }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let consistent = findings.iter().all(|f| f.power_nonzero);
    Ok(SearchReport {
        ring: ring.describe(),
        seed: config.seed,
        pool: pool.into_iter().map(|(d, _)| d).collect(),
        examined: families.len(),
        exhaustive,
        findings,
        consistent,
    })
}
