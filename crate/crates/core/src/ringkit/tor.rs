use rayon::prelude::*;
use serde::Serialize;

use super::module::{tensor_modules, FgModule};
use super::resolution::MinimalResolution;
use crate::error::{Error, Result};

/// `dim Tor_i(M, N)` for `0 <= i <= top`, computed as `H(F(M) ⊗ N)`.
pub fn tor_one_sided(res: &mut MinimalResolution, n: &FgModule, top: usize) -> Result<Vec<usize>> {
    res.extend_to(top + 1)?;
    let c = res.tensor_with(n, top + 1);
    Ok((0..=top).map(|i| c.homology_dim(i as i64)).collect())
}

/// First `i` in `from..=top` with `Tor_i(M, N) != 0`, with its dimension.
pub fn first_nonvanishing_tor(res: &mut MinimalResolution, n: &FgModule, from: usize, top: usize) -> Result<Option<(usize, usize)>> {
    res.extend_to(top + 1)?;
    Ok(scan_tor(res, n, from, top))
}

/// Same as [`first_nonvanishing_tor`] on a resolution already extended to
/// `top + 1`. Ranks are computed degree by degree, stopping at the first
/// nonzero group.
pub(crate) fn scan_tor(res: &MinimalResolution, n: &FgModule, from: usize, top: usize) -> Option<(usize, usize)> {
    if n.is_zero() {
        return None;
    }
    let c = res.tensor_with(n, top + 1);
    let mut rank_in = c.diff(from as i64).rank();
    for i in from..=top {
        if res.betti_at(i) == 0 {
            return None;
        }
        let rank_out = c.diff(i as i64 + 1).rank();
        let h = c.dim(i as i64) - rank_in - rank_out;
        if h != 0 {
            return Some((i, h));
        }
        rank_in = rank_out;
    }
    None
}

/// `dim Tor_i^R(M, N)`, `0 <= i <= top`, computed from both resolutions.
pub fn tor_dims(m: &FgModule, n: &FgModule, top: usize) -> Result<Vec<usize>> {
    if m.ring() != n.ring() {
        return Err(Error::Malformed("Tor of modules over different rings".into()));
    }
    let mut rm = MinimalResolution::new(m)?;
    let mut rn = MinimalResolution::new(n)?;
    let left = tor_one_sided(&mut rm, n, top)?;
    let right = tor_one_sided(&mut rn, m, top)?;
    if let Some(i) = (0..=top).find(|&i| left[i] != right[i]) {
        return Err(Error::BalanceMismatch { degree: i, left: left[i], right: right[i] });
    }
    Ok(left)
}

/// A failing instance `Tor_degree(⊗_{a ∈ subset} N_a, N_against) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorWitness {
    pub subset: Vec<usize>,
    pub against: usize,
    pub degree: usize,
    pub dim: usize,
}

/// Result of the strong Tor-independence check over `1..=certified_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub modules: usize,
    pub certified_to: usize,
    /// Number of `(S, j)` conditions.
    pub conditions: usize,
    pub witness: Option<TorWitness>,
    /// `(index, projective dimension)` for inputs whose resolution terminated
    /// within the cutoff.
    pub finite_projective_dimension: Vec<(usize, usize)>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `Tor_i(⊗_{a∈S} N_a, N_j) = 0` for `1 <= i <= top`, every nonempty
/// `S` and every `j ∉ S`. Subsets are visited in increasing bitmask order and
/// the first failure in that order is reported.
pub fn check_strong_tor_independence(modules: &[FgModule], top: usize) -> Result<IndependenceReport> {
    let n = modules.len();
    if let Some(first) = modules.first() {
        if modules.iter().any(|m| m.ring() != first.ring()) {
            return Err(Error::Malformed("modules over different rings".into()));
        }
        first.ring().dim()?;
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::Malformed(format!("{n} modules is too many for subset enumeration")));
    }
    let mut resolutions = modules.iter().map(MinimalResolution::new).collect::<Result<Vec<_>>>()?;
    resolutions.par_iter_mut().try_for_each(|r| r.extend_to(top + 1))?;
    let finite_projective_dimension: Vec<(usize, usize)> =
        resolutions.iter().enumerate().filter_map(|(i, r)| r.projective_dimension().map(|pd| (i, pd))).collect();

    let mut conditions = Vec::new();
    for mask in 1usize..(1 << n) {
        for j in (0..n).filter(|j| mask & (1 << j) == 0) {
            conditions.push((mask, j));
        }
    }
    let outcome: Result<Option<TorWitness>> = conditions
        .par_iter()
        .map(|&(mask, j)| -> Result<Option<TorWitness>> {
            let subset: Vec<usize> = (0..n).filter(|a| mask & (1 << a) != 0).collect();
            let mut product = modules[subset[0]].clone();
            for &a in &subset[1..] {
                product = tensor_modules(&product, &modules[a])?;
            }
            Ok(scan_tor(&resolutions[j], &product, 1, top)
                .map(|(degree, dim)| TorWitness { subset, against: j, degree, dim }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None));
    Ok(IndependenceReport {
        modules: n,
        certified_to: top,
        conditions: conditions.len(),
        witness: outcome?,
        finite_projective_dimension,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::ring::{make_ring, Monomial, MonomialRing};
    use super::*;
    use crate::exactla::PrimeField;

    fn ring(nvars: usize, gens: &[&[u32]]) -> Arc<MonomialRing> {
        let f = PrimeField::new(32003).unwrap();
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial(g.to_vec())).collect();
        Arc::new(make_ring(f, nvars, &gens).unwrap())
    }

    #[test]
    fn tor_fixtures() {
        let r1 = ring(1, &[&[2]]);
        let k1 = FgModule::residue_field(r1).unwrap();
        assert_eq!(tor_dims(&k1, &k1, 10).unwrap(), vec![1; 11]);

        let r2 = ring(2, &[&[2, 0], &[0, 2]]);
        let k2 = FgModule::residue_field(r2.clone()).unwrap();
        assert_eq!(tor_dims(&k2, &k2, 6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
        let a = FgModule::cyclic(r2.clone(), &[Monomial(vec![1, 0])]).unwrap();
        let b = FgModule::cyclic(r2.clone(), &[Monomial(vec![0, 1])]).unwrap();
        let t = tor_dims(&a, &b, 10).unwrap();
        assert_eq!(t[0], 1);
        assert!(t[1..].iter().all(|&d| d == 0));
        let free = FgModule::free(r2, 1).unwrap();
        assert_eq!(tor_dims(&free, &a, 4).unwrap(), vec![2, 0, 0, 0, 0]);
    }

    #[test]
    fn independence_examples() {
        let r2 = ring(2, &[&[2, 0], &[0, 2]]);
        let a = FgModule::cyclic(r2.clone(), &[Monomial(vec![1, 0])]).unwrap();
        let b = FgModule::cyclic(r2.clone(), &[Monomial(vec![0, 1])]).unwrap();
        let rep = check_strong_tor_independence(std::slice::from_ref(&a), 10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.conditions, 0);
        let rep = check_strong_tor_independence(&[a, b], 10).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.conditions, 2);
        let k = FgModule::residue_field(r2).unwrap();
        let rep = check_strong_tor_independence(&[k.clone(), k], 10).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!((w.subset, w.against, w.degree, w.dim), (vec![0], 1, 1, 2));
    }

    #[test]
    fn finite_projective_dimension_is_flagged() {
        let r2 = ring(2, &[&[2, 0], &[0, 2]]);
        let free = FgModule::free(r2.clone(), 1).unwrap();
        let k = FgModule::residue_field(r2).unwrap();
        let rep = check_strong_tor_independence(&[free, k], 4).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.finite_projective_dimension, vec![(0, 0)]);
    }
}
