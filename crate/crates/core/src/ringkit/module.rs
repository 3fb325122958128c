use std::sync::Arc;

use super::ring::{Monomial, MonomialRing};
use crate::error::{Axiom, Error, Result};
use crate::exactla::{quotient_basis, Matrix, PrimeField, QuotientBasis, Scalar, Subspace};

/// A finite-dimensional module over an artinian monomial ring, stored as one
/// commuting action matrix per variable.
#[derive(Clone, Debug)]
pub struct FgModule {
    ring: Arc<MonomialRing>,
    dim: usize,
    actions: Vec<Matrix>,
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.dim == other.dim && self.actions == other.actions
    }
}

impl FgModule {
    /// Validates commutativity and that every ideal generator acts by zero.
    pub fn from_actions(ring: Arc<MonomialRing>, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if !ring.is_artinian() {
            return Err(Error::NonArtinian);
        }
        if actions.len() != ring.nvars() {
            return Err(Error::Malformed(format!("{} action matrices for {} variables", actions.len(), ring.nvars())));
        }
        for (a, x) in actions.iter().enumerate() {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::Malformed(format!("action of variable {a} is {}x{}, expected {dim}x{dim}", x.rows(), x.cols())));
            }
            if x.field() != ring.field() {
                return Err(Error::Malformed("action over a different field".into()));
            }
        }
        for a in 0..actions.len() {
            for b in a + 1..actions.len() {
                if actions[a].mul(&actions[b]) != actions[b].mul(&actions[a]) {
                    return Err(Error::AxiomViolation { axiom: Axiom::ModuleAction, witness: vec![a, b] });
                }
            }
        }
        let module = FgModule { ring, dim, actions };
        for (g, gen) in module.ring.gens().iter().enumerate() {
            if !module.monomial_action(gen).is_zero() {
                return Err(Error::AxiomViolation { axiom: Axiom::ModuleAction, witness: vec![g] });
            }
        }
        Ok(module)
    }

    /// `R^rank`, with k-basis index `j * dim R + u`.
    pub fn free(ring: Arc<MonomialRing>, rank: usize) -> Result<Self> {
        let n = ring.dim()?;
        let f = ring.field();
        let actions = (0..ring.nvars())
            .map(|a| Ok(Matrix::identity(f, rank).kronecker(&ring.var_action(a)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FgModule { ring, dim: rank * n, actions })
    }

    pub fn residue_field(ring: Arc<MonomialRing>) -> Result<Self> {
        ring.dim()?;
        let f = ring.field();
        let actions = vec![Matrix::zeros(f, 1, 1); ring.nvars()];
        Ok(FgModule { ring, dim: 1, actions })
    }

    /// `R/J` for a monomial ideal `J`.
    pub fn cyclic(ring: Arc<MonomialRing>, ideal: &[Monomial]) -> Result<Self> {
        let n = ring.dim()?;
        for m in ideal {
            if m.0.len() != ring.nvars() {
                return Err(Error::Malformed(format!("monomial {:?} has the wrong length", m.0)));
            }
        }
        let basis = ring.basis()?;
        let keep: Vec<usize> = (0..n).filter(|&i| !ideal.iter().any(|g| g.divides(&basis[i]))).collect();
        if keep.is_empty() {
            return Err(Error::ZeroModule);
        }
        let free = FgModule::free(ring.clone(), 1)?;
        let dropped: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let sub = Subspace::coordinate(ring.field(), n, &dropped);
        Ok(free.quotient(&sub)?.0)
    }

    /// Cokernel of `R^b -> R^a` given as an `a x b` matrix of ring elements
    /// (each entry in ring-basis coordinates).
    pub fn from_presentation(ring: Arc<MonomialRing>, gens: usize, relations: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        let n = ring.dim()?;
        let free = FgModule::free(ring.clone(), gens)?;
        let mut vectors = Vec::new();
        for (c, col) in relations.iter().enumerate() {
            if col.len() != gens {
                return Err(Error::Malformed(format!("relation {c} has {} entries, expected {gens}", col.len())));
            }
            let mut v = vec![0; gens * n];
            for (j, entry) in col.iter().enumerate() {
                if entry.len() != n {
                    return Err(Error::Malformed(format!("ring element with {} coordinates, expected {n}", entry.len())));
                }
                v[j * n..(j + 1) * n].copy_from_slice(entry);
            }
            vectors.push(v);
        }
        let sub = free.generated_submodule(&vectors);
        if sub.dim() == free.dim() {
            return Err(Error::ZeroModule);
        }
        Ok(free.quotient(&sub)?.0)
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, a: usize) -> &Matrix {
        &self.actions[a]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn monomial_action(&self, u: &Monomial) -> Matrix {
        let mut out = Matrix::identity(self.field(), self.dim);
        for (a, &e) in u.0.iter().enumerate() {
            for _ in 0..e {
                out = self.actions[a].mul(&out);
            }
        }
        out
    }

    /// Action of every ring-basis monomial, indexed like the ring basis.
    pub fn monomial_actions(&self) -> Vec<Matrix> {
        let basis = self.ring.basis().expect("modules live over artinian rings");
        let f = self.field();
        let mut out: Vec<Matrix> = Vec::with_capacity(basis.len());
        for (i, u) in basis.iter().enumerate() {
            // Reuse a smaller monomial: u = x_a * u' with u' earlier in the order.
            let step = (0..u.0.len()).find_map(|a| {
                (u.0[a] > 0).then(|| {
                    let mut prev = u.clone();
                    prev.0[a] -= 1;
                    self.ring.index_of(&prev).map(|j| (a, j))
                })?
            });
            out.push(match step {
                Some((a, j)) if j < i => self.actions[a].mul(&out[j]),
                _ if u.degree() == 0 => Matrix::identity(f, self.dim),
                _ => self.monomial_action(u),
            });
        }
        out
    }

    /// Action of a ring element given in ring-basis coordinates.
    pub fn element_action(&self, element: &[Scalar], monomials: &[Matrix]) -> Matrix {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (u, &c) in element.iter().enumerate().filter(|(_, &c)| c != 0) {
            out = out.add(&monomials[u].scale(c));
        }
        out
    }

    /// `m_R M`.
    pub fn max_ideal_image(&self) -> Subspace {
        let vectors: Vec<Vec<Scalar>> = self.actions.iter().flat_map(|x| x.columns()).collect();
        Subspace::span_vectors(self.field(), self.dim, &vectors)
    }

    /// Minimal number of generators, `dim M / m M`.
    pub fn num_generators(&self) -> usize {
        self.dim - self.max_ideal_image().dim()
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let f = self.field();
        let mut current = Subspace::span_vectors(f, self.dim, vectors);
        loop {
            let mut all: Vec<Vec<Scalar>> = current.basis().columns();
            for x in &self.actions {
                all.extend(x.mul(current.basis()).columns());
            }
            let next = Subspace::span_vectors(f, self.dim, &all);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// The submodule on an invariant subspace, in the subspace's basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<FgModule> {
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(a, x)| {
                sub.restrict_operator(x)
                    .ok_or(Error::AxiomViolation { axiom: Axiom::ModuleAction, witness: vec![a] })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FgModule { ring: self.ring.clone(), dim: sub.dim(), actions })
    }

    /// `M / U` on the deterministic coordinate complement of `U`.
    pub fn quotient(&self, sub: &Subspace) -> Result<(FgModule, QuotientBasis)> {
        let q = quotient_basis(self.dim, sub)?;
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(a, x)| {
                if !sub.image(x).basis().columns().iter().all(|v| sub.contains(v)) {
                    return Err(Error::AxiomViolation { axiom: Axiom::ModuleAction, witness: vec![a] });
                }
                Ok(q.projection.mul(&x.select_cols(&q.positions)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((FgModule { ring: self.ring.clone(), dim: q.dim(), actions }, q))
    }

    pub fn direct_sum(&self, other: &FgModule) -> Result<FgModule> {
        if self.ring != other.ring {
            return Err(Error::Malformed("direct sum of modules over different rings".into()));
        }
        let f = self.field();
        let n = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(f, n, n);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m.set(r, c, x.get(r, c));
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m.set(self.dim + r, self.dim + c, y.get(r, c));
                    }
                }
                m
            })
            .collect();
        Ok(FgModule { ring: self.ring.clone(), dim: n, actions })
    }
}

/// `M ⊗_R N = (M ⊗_k N) / span{x_a u ⊗ v - u ⊗ x_a v}` with basis index `u * dim N + v`.
pub fn tensor_modules(m: &FgModule, n: &FgModule) -> Result<FgModule> {
    if m.ring != n.ring {
        return Err(Error::Malformed("tensor product of modules over different rings".into()));
    }
    if !m.ring.is_artinian() {
        return Err(Error::NonArtinian);
    }
    let f = m.field();
    let im = Matrix::identity(f, m.dim);
    let inn = Matrix::identity(f, n.dim);
    let big = m.dim * n.dim;
    let mut relations: Vec<Vec<Scalar>> = Vec::new();
    let mut actions = Vec::with_capacity(m.actions.len());
    for (x, y) in m.actions.iter().zip(&n.actions) {
        let left = x.kronecker(&inn);
        relations.extend(left.sub(&im.kronecker(y)).columns());
        actions.push(left);
    }
    let sub = Subspace::span_vectors(f, big, &relations);
    let whole = FgModule { ring: m.ring.clone(), dim: big, actions };
    Ok(whole.quotient(&sub)?.0)
}

#[cfg(test)]
mod tests {
    use super::super::ring::make_ring;
    use super::*;

    fn ring(nvars: usize, gens: &[&[u32]]) -> Arc<MonomialRing> {
        let f = PrimeField::new(32003).unwrap();
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial(g.to_vec())).collect();
        Arc::new(make_ring(f, nvars, &gens).unwrap())
    }

    #[test]
    fn cyclic_quotients() {
        let r = ring(2, &[&[2, 0], &[0, 2]]);
        let m = FgModule::cyclic(r.clone(), &[Monomial(vec![1, 0])]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.num_generators(), 1);
        assert!(m.action(0).is_zero());
        assert!(!m.action(1).is_zero());
    }

    #[test]
    fn tensor_examples() {
        let r = ring(2, &[&[2, 0], &[0, 2]]);
        let a = FgModule::cyclic(r.clone(), &[Monomial(vec![1, 0])]).unwrap();
        let b = FgModule::cyclic(r.clone(), &[Monomial(vec![0, 1])]).unwrap();
        assert_eq!(tensor_modules(&a, &b).unwrap().dim(), 1);
        let free = FgModule::free(r.clone(), 1).unwrap();
        let t = tensor_modules(&a, &free).unwrap();
        assert_eq!(t.dim(), a.dim());
        assert_eq!(t.action(1).rank(), a.action(1).rank());
        let k = FgModule::residue_field(r).unwrap();
        assert_eq!(tensor_modules(&k, &k).unwrap().dim(), 1);
    }

    #[test]
    fn presentation_matches_cyclic() {
        let r = ring(2, &[&[2, 0], &[0, 2]]);
        let x = r.element(&[(1, Monomial(vec![1, 0]))]).unwrap();
        let m = FgModule::from_presentation(r.clone(), 1, &[vec![x]]).unwrap();
        let c = FgModule::cyclic(r, &[Monomial(vec![1, 0])]).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let r = ring(1, &[&[2]]);
        let f = r.field();
        // x acting as the identity does not square to zero.
        let bad = FgModule::from_actions(r.clone(), 1, vec![Matrix::identity(f, 1)]);
        assert!(matches!(bad, Err(Error::AxiomViolation { axiom: Axiom::ModuleAction, .. })));
        let r2 = ring(2, &[&[2, 0], &[0, 2]]);
        let x = Matrix::from_rows(f, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        let y = Matrix::from_rows(f, &[vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]]);
        assert!(FgModule::from_actions(r2, 3, vec![x, y]).is_err());
    }
}
