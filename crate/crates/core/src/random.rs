//! Seeded generators for small test inputs, shared by the property suites
//! and the benchmarks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dgalgebra::DgAlgebra;
use crate::dgmod::{DgModule, SemifreeModule};
use crate::error::Result;
use crate::exactla::{Matrix, PrimeField, Scalar, Subspace};
use crate::ringkit::{make_ring, FgModule, Monomial, MonomialRing};

/// Trivial extension `k ⋉ V` with random degrees in `1..=4` and a random
/// differential. Each element of `V` is a source, a target or neither, so
/// `∂² = 0` holds by construction.
pub fn random_trivial_extension<R: Rng>(rng: &mut R, f: PrimeField, dim_v: usize) -> DgAlgebra {
    let degrees: Vec<usize> = (0..dim_v).map(|_| rng.gen_range(1..=4)).collect();
    let role: Vec<u8> = (0..dim_v).map(|_| rng.gen_range(0..3)).collect();
    let mut diff = Matrix::zeros(f, dim_v, dim_v);
    for j in 0..dim_v {
        for i in 0..dim_v {
            if role[j] == 1 && role[i] == 2 && degrees[i] + 1 == degrees[j] && degrees[i] >= 1 && rng.gen_bool(0.7) {
                diff.set(i, j, rng.gen_range(1..f.characteristic()));
            }
        }
    }
    DgAlgebra::trivial_extension(f, &degrees, &diff).expect("roles keep ∂² = 0")
}

/// A random algebra of dimension at most `max_dim` (at least 2), drawn from
/// exterior algebras, truncated polynomial algebras, acyclic pairs, trivial
/// extensions and tensor products of these.
pub fn random_dg_algebra<R: Rng>(rng: &mut R, f: PrimeField, max_dim: usize) -> DgAlgebra {
    let max_dim = max_dim.max(2);
    loop {
        let a = match rng.gen_range(0..5) {
            0 => DgAlgebra::exterior(f, 2 * rng.gen_range(0..3) + 1),
            1 => DgAlgebra::truncated_polynomial(f, 2 * rng.gen_range(1..3), rng.gen_range(2..=4)).expect("even degree"),
            2 => DgAlgebra::acyclic_pair(f, 1),
            3 => {
                let dim_v = rng.gen_range(1..max_dim);
                random_trivial_extension(rng, f, dim_v)
            }
            _ => {
                let x = DgAlgebra::exterior(f, 2 * rng.gen_range(0..2) + 1);
                let y = if rng.gen_bool(0.5) {
                    DgAlgebra::exterior(f, 2 * rng.gen_range(0..2) + 1)
                } else {
                    DgAlgebra::truncated_polynomial(f, 2, 2).expect("even degree")
                };
                x.tensor(&y).expect("tensor of valid algebras")
            }
        };
        if a.dim() <= max_dim {
            return a;
        }
    }
}

/// Cycles of `x` in degree `d` as a subspace of full coordinates.
fn cycles(x: &DgModule, d: i64) -> Subspace {
    let idx = x.indices_in_degree(d);
    let lower = x.indices_in_degree(d - 1);
    let local = x.diff().block(&lower, &idx).kernel_basis();
    let vectors: Vec<Vec<Scalar>> = (0..local.dim())
        .map(|c| {
            let v = local.vector(c);
            let mut full = vec![0; x.dim()];
            for (t, &i) in idx.iter().enumerate() {
                full[i] = v[t];
            }
            full
        })
        .collect();
    Subspace::span_vectors(x.field(), x.dim(), &vectors)
}

/// A semifree module with `len` generators in degrees `base..=base + spread`,
/// added in increasing degree; each `∂e` is a random cycle of the part built
/// so far, so `∂² = 0` holds by construction.
pub fn random_semifree<R: Rng>(rng: &mut R, algebra: &Arc<DgAlgebra>, len: usize, base: i64, spread: i64) -> SemifreeModule {
    let f = algebra.field();
    let n = algebra.dim();
    let mut degrees: Vec<i64> = (0..len).map(|_| base + rng.gen_range(0..=spread)).collect();
    degrees.sort_unstable();
    let labels: Vec<String> = (0..len).map(|j| format!("e{j}")).collect();
    let mut sparse: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    for j in 0..len {
        let part = SemifreeModule::new(algebra.clone(), labels[..j].to_vec(), degrees[..j].to_vec(), &sparse).expect("valid prefix");
        if j == 0 || rng.gen_bool(0.25) {
            continue;
        }
        let x = part.expand();
        let z = cycles(&x, degrees[j] - 1);
        if z.is_zero() {
            continue;
        }
        let mut v = vec![0; x.dim()];
        for c in 0..z.dim() {
            let coef = rng.gen_range(0..f.characteristic());
            for (t, &y) in z.vector(c).iter().enumerate() {
                v[t] = f.mul_add(v[t], coef, y);
            }
        }
        for i in 0..j {
            let m = v[i * n..(i + 1) * n].to_vec();
            if m.iter().any(|&c| c != 0) {
                sparse.push((i, j, m));
            }
        }
    }
    SemifreeModule::new(algebra.clone(), labels, degrees, &sparse).expect("cycles give ∂² = 0")
}

/// A finite DG module with nonzero homology: a shifted residue field, a
/// shifted free module, the expansion of a random semifree module, or a
/// direct sum of two of these.
pub fn random_finite_module<R: Rng>(rng: &mut R, algebra: &Arc<DgAlgebra>) -> DgModule {
    let one = |rng: &mut R| -> DgModule {
        match rng.gen_range(0..3) {
            0 => DgModule::residue_field(algebra.clone()).shift(rng.gen_range(0..3)),
            1 => DgModule::from_algebra(algebra.clone()).shift(rng.gen_range(0..3)),
            _ => {
                let len = rng.gen_range(1..=3);
                let base = rng.gen_range(0..2);
                random_semifree(rng, algebra, len, base, 2).expand()
            }
        }
    };
    loop {
        let m = if rng.gen_bool(0.3) {
            let a = one(rng);
            a.direct_sum(&one(rng)).expect("same algebra")
        } else {
            one(rng)
        };
        if !m.homology_profile().is_zero() {
            return m;
        }
    }
}

/// A random artinian monomial ring in `1..=max_vars` variables with pure
/// powers of degree `2..=3` and up to two mixed generators.
pub fn random_artinian_ring<R: Rng>(rng: &mut R, f: PrimeField, max_vars: usize) -> MonomialRing {
    let m = rng.gen_range(1..=max_vars.max(1));
    let mut gens: Vec<Monomial> = (0..m)
        .map(|a| {
            let mut e = vec![0; m];
            e[a] = rng.gen_range(2..=3);
            Monomial(e)
        })
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        if m < 2 {
            break;
        }
        let mut vars: Vec<usize> = (0..m).collect();
        vars.shuffle(rng);
        let mut e = vec![0; m];
        e[vars[0]] = 1;
        e[vars[1]] = 1;
        gens.push(Monomial(e));
    }
    make_ring(f, m, &gens).expect("pure powers make an artinian ring")
}

/// A random element of `m_R`.
pub fn random_in_max_ideal<R: Rng>(rng: &mut R, ring: &MonomialRing) -> Result<Vec<Scalar>> {
    let p = ring.field().characteristic();
    Ok(ring.basis()?.iter().map(|b| if b.degree() > 0 && rng.gen_bool(0.5) { rng.gen_range(0..p) } else { 0 }).collect())
}

/// Cokernel of a random map `R^rels -> R^gens` with entries in `m_R`.
pub fn random_ring_module<R: Rng>(rng: &mut R, ring: &Arc<MonomialRing>, gens: usize, rels: usize) -> Result<FgModule> {
    let relations = (0..rels)
        .map(|_| (0..gens).map(|_| random_in_max_ideal(rng, ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FgModule::from_presentation(ring.clone(), gens, &relations)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn generators_are_valid_and_seeded() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = Arc::new(random_dg_algebra(&mut rng, f, 8));
            assert!(a.dim() <= 8);
            let l = random_semifree(&mut rng, &a, 4, 0, 3);
            l.expand().check_axioms().unwrap();
            assert!(!random_finite_module(&mut rng, &a).homology_profile().is_zero());
        }
        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(random_dg_algebra(&mut r1, f, 8), random_dg_algebra(&mut r2, f, 8));
    }
}
