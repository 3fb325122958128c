use std::sync::Arc;

use super::module::FgModule;
use super::ring::MonomialRing;
use crate::error::Result;
use crate::exactla::{quotient_basis, ChainComplex, Matrix, Scalar};

/// A minimal free resolution `F_0 <- F_1 <- ...` of an artinian module,
/// extended lazily.
///
/// `F_i = R^{β_i}` with k-basis index `j * dim R + u`. Generators of each
/// syzygy module are the coordinate vectors complementary to `m * Syz`, so the
/// output is a deterministic function of the input.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    module: FgModule,
    ring_dim: usize,
    betti: Vec<usize>,
    /// `ε: F_0 -> M` as a k-matrix.
    augmentation: Option<Matrix>,
    /// `differentials[i - 1] = d_i: F_i -> F_{i-1}` as k-matrices.
    differentials: Vec<Matrix>,
    /// The next module to cover, with its embedding into the previous free module.
    pending: Option<(FgModule, Matrix)>,
    first_syzygy: Option<(FgModule, Matrix)>,
}

impl MinimalResolution {
    pub fn new(module: &FgModule) -> Result<Self> {
        let ring_dim = module.ring().dim()?;
        let id = Matrix::identity(module.field(), module.dim());
        Ok(MinimalResolution {
            module: module.clone(),
            ring_dim,
            betti: Vec::new(),
            augmentation: None,
            differentials: Vec::new(),
            pending: Some((module.clone(), id)),
            first_syzygy: None,
        })
    }

    /// Resolution with `F_0..F_len` computed (fewer if it terminates).
    pub fn build(module: &FgModule, len: usize) -> Result<Self> {
        let mut r = Self::new(module)?;
        r.extend_to(len)?;
        Ok(r)
    }

    pub fn ring(&self) -> &Arc<MonomialRing> {
        self.module.ring()
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    /// Computes free modules through `F_len`.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        while self.betti.len() <= len {
            if self.pending.as_ref().is_none_or(|(s, _)| s.is_zero()) {
                break;
            }
            let (s, embed) = self.pending.take().expect("checked above");
            let f = s.field();
            let n = self.ring_dim;
            let gens = quotient_basis(s.dim(), &s.max_ideal_image())?.positions;
            let monos = s.monomial_actions();
            let b = gens.len();
            let mut phi = Matrix::zeros(f, s.dim(), b * n);
            for (j, &g) in gens.iter().enumerate() {
                for (u, x) in monos.iter().enumerate() {
                    for r in 0..s.dim() {
                        phi.set(r, j * n + u, x.get(r, g));
                    }
                }
            }
            let kernel = phi.kernel_basis();
            let free = FgModule::free(s.ring().clone(), b)?;
            let syz = free.submodule(&kernel)?;
            let image = embed.mul(&phi);
            if self.betti.is_empty() {
                self.augmentation = Some(image);
            } else {
                self.differentials.push(image);
            }
            self.betti.push(b);
            if self.betti.len() == 1 {
                self.first_syzygy = Some((syz.clone(), kernel.basis().clone()));
            }
            self.pending = Some((syz, kernel.basis().clone()));
        }
        Ok(())
    }

    /// Betti numbers computed so far.
    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn betti_at(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    /// Number of free modules computed.
    pub fn len(&self) -> usize {
        self.betti.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betti.is_empty()
    }

    /// `Some(pd)` once a zero syzygy has been reached.
    pub fn projective_dimension(&self) -> Option<usize> {
        match &self.pending {
            Some((s, _)) if s.is_zero() => Some(self.betti.len().saturating_sub(1)),
            _ => None,
        }
    }

    pub fn augmentation(&self) -> Option<&Matrix> {
        self.augmentation.as_ref()
    }

    /// `d_i` as a k-matrix, `i >= 1`; zero past termination.
    pub fn k_differential(&self, i: usize) -> Matrix {
        assert!(i >= 1);
        self.differentials.get(i - 1).cloned().unwrap_or_else(|| {
            let f = self.module.field();
            Matrix::zeros(f, self.betti_at(i - 1) * self.ring_dim, self.betti_at(i) * self.ring_dim)
        })
    }

    /// Entry `(l, j)` of `d_i` as a ring element: the image of the `j`-th
    /// generator of `F_i`, read in block `l` of `F_{i-1}`.
    pub fn entry(&self, i: usize, l: usize, j: usize) -> Vec<Scalar> {
        let n = self.ring_dim;
        let d = &self.differentials[i - 1];
        (0..n).map(|u| d.get(l * n + u, j * n)).collect()
    }

    /// The ring-element matrix of `d_i`, rows indexed by generators of `F_{i-1}`.
    pub fn ring_matrix(&self, i: usize) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.betti_at(i - 1)).map(|l| (0..self.betti_at(i)).map(|j| self.entry(i, l, j)).collect()).collect()
    }

    /// Every differential entry lies in `m_R` (no constant terms).
    pub fn is_minimal(&self) -> bool {
        (1..=self.differentials.len())
            .all(|i| (0..self.betti_at(i - 1)).all(|l| (0..self.betti_at(i)).all(|j| self.entry(i, l, j)[0] == 0)))
    }

    /// `F_0..F_len` as a k-complex (without `M`).
    pub fn complex(&self) -> ChainComplex {
        let mut c = ChainComplex::new(self.module.field());
        for (i, &b) in self.betti.iter().enumerate() {
            c.set_dim(i as i64, b * self.ring_dim);
        }
        for (i, d) in self.differentials.iter().enumerate() {
            c.set_diff(i as i64 + 1, d.clone());
        }
        c
    }

    /// `H_i(F) = 0` for `0 < i < len - 1` and `H_0(F) ≅ M` (by dimension).
    pub fn is_exact(&self) -> bool {
        let c = self.complex();
        let top = self.betti.len().saturating_sub(1);
        let finished = self.projective_dimension().is_some();
        let inner = (1..top).all(|i| c.homology_dim(i as i64) == 0);
        let last = !finished || top == 0 || c.homology_dim(top as i64) == 0;
        inner && last && c.homology_dim(0) == self.module.dim()
    }

    /// The first syzygy with its embedding into `F_0`.
    pub fn first_syzygy(&self) -> Option<&(FgModule, Matrix)> {
        self.first_syzygy.as_ref()
    }

    /// `F ⊗_R N` in degrees `0..=top`.
    pub fn tensor_with(&self, n: &FgModule, top: usize) -> ChainComplex {
        let f = n.field();
        let monos = n.monomial_actions();
        let mut c = ChainComplex::new(f);
        for i in 0..=top.min(self.betti.len().saturating_sub(1)) {
            c.set_dim(i as i64, self.betti_at(i) * n.dim());
        }
        for i in 1..=top.min(self.differentials.len()) {
            let rows = self.betti_at(i - 1);
            let cols = self.betti_at(i);
            let mut d = Matrix::zeros(f, rows * n.dim(), cols * n.dim());
            for l in 0..rows {
                for j in 0..cols {
                    let e = self.entry(i, l, j);
                    if e.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let block = n.element_action(&e, &monos);
                    for r in 0..n.dim() {
                        for s in 0..n.dim() {
                            d.set(l * n.dim() + r, j * n.dim() + s, block.get(r, s));
                        }
                    }
                }
            }
            c.set_diff(i as i64, d);
        }
        c
    }
}

/// `F_0..F_len` of a minimal resolution of `M`.
pub fn minimal_free_resolution(m: &FgModule, len: usize) -> Result<MinimalResolution> {
    MinimalResolution::build(m, len)
}

/// First syzygy `ker(F_0 -> M)` and its embedding into `F_0`.
pub fn syzygy_module(m: &FgModule) -> Result<(FgModule, Matrix)> {
    let r = MinimalResolution::build(m, 0)?;
    Ok(match r.first_syzygy() {
        Some(s) => s.clone(),
        None => {
            let f = m.field();
            (FgModule::free(m.ring().clone(), 0)?, Matrix::zeros(f, 0, 0))
        }
    })
}
