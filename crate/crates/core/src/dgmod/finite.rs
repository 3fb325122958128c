use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgalgebra::{DgAlgebra, HomologyAlgebra};
use crate::error::{Axiom, Error, Result};
use crate::exactla::{quotient_basis, ChainComplex, HomologyProfile, Matrix, PrimeField, QuotientBasis, Scalar, Subquotient, Subspace};

/// A finite-dimensional DG module over a DG algebra `A`.
///
/// Stored on a homogeneous k-basis: `diff` has column `j` equal to `∂v_j`, and
/// `actions[a]` is left multiplication by the algebra basis element `b_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct DgModule {
    algebra: Arc<DgAlgebra>,
    degrees: Vec<i64>,
    diff: Matrix,
    actions: Vec<Matrix>,
}

/// Per-degree homology with representatives in full module coordinates.
#[derive(Clone, Debug)]
pub struct ModuleHomology {
    pub groups: BTreeMap<i64, (Vec<usize>, Subquotient)>,
}

impl ModuleHomology {
    pub fn profile(&self) -> HomologyProfile {
        HomologyProfile::from_dims(self.groups.iter().map(|(&d, (_, sq))| (d, sq.dim())))
    }
}

impl DgModule {
    /// Validates the DG module axioms on every basis pair.
    pub fn new(algebra: Arc<DgAlgebra>, degrees: Vec<i64>, diff: Matrix, actions: Vec<Matrix>) -> Result<Self> {
        let m = DgModule::from_parts(algebra, degrees, diff, actions)?;
        m.check_axioms()?;
        Ok(m)
    }

    /// Shape checks only; used for constructions that are correct by design.
    pub(crate) fn from_parts(algebra: Arc<DgAlgebra>, degrees: Vec<i64>, diff: Matrix, actions: Vec<Matrix>) -> Result<Self> {
        let n = degrees.len();
        if diff.rows() != n || diff.cols() != n {
            return Err(Error::Malformed(format!("differential is {}x{}, expected {n}x{n}", diff.rows(), diff.cols())));
        }
        if actions.len() != algebra.dim() {
            return Err(Error::Malformed(format!("{} action matrices for an algebra of dimension {}", actions.len(), algebra.dim())));
        }
        if actions.iter().any(|x| x.rows() != n || x.cols() != n) {
            return Err(Error::Malformed("action matrix of the wrong size".into()));
        }
        Ok(DgModule { algebra, degrees, diff, actions })
    }

    pub fn check_axioms(&self) -> Result<()> {
        let a = &*self.algebra;
        let f = self.field();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.diff.get(i, j) != 0 && self.degrees[i] != self.degrees[j] - 1 {
                    return Err(Error::DegreeMismatch { row: i, col: j });
                }
            }
        }
        for (b, x) in self.actions.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if x.get(i, j) != 0 && self.degrees[i] != self.degrees[j] + a.degree(b) as i64 {
                        return Err(Error::AxiomViolation { axiom: Axiom::Grading, witness: vec![b, i, j] });
                    }
                }
            }
        }
        if !self.diff.mul(&self.diff).is_zero() {
            return Err(Error::AxiomViolation { axiom: Axiom::Differential, witness: vec![] });
        }
        if self.actions[a.unit()] != Matrix::identity(f, n) {
            return Err(Error::AxiomViolation { axiom: Axiom::Unit, witness: vec![a.unit()] });
        }
        for b in 0..a.dim() {
            for c in 0..a.dim() {
                let lhs = self.actions[b].mul(&self.actions[c]);
                if lhs != self.element_action(a.product(b, c)) {
                    return Err(Error::AxiomViolation { axiom: Axiom::Associativity, witness: vec![b, c] });
                }
            }
        }
        for b in 0..a.dim() {
            let sign = f.sign(a.degree(b) % 2 == 1);
            let lhs = self.diff.mul(&self.actions[b]).sub(&self.actions[b].mul(&self.diff).scale(sign));
            if lhs != self.element_action(&a.diff().column(b)) {
                return Err(Error::AxiomViolation { axiom: Axiom::Leibniz, witness: vec![b] });
            }
        }
        Ok(())
    }

    /// `A` as a module over itself.
    pub fn from_algebra(algebra: Arc<DgAlgebra>) -> Self {
        let degrees = algebra.degrees().iter().map(|&d| d as i64).collect();
        let actions = (0..algebra.dim()).map(|i| algebra.left_mult(i)).collect();
        let diff = algebra.diff().clone();
        DgModule { algebra, degrees, diff, actions }
    }

    /// `k = A / A_+` in degree 0.
    pub fn residue_field(algebra: Arc<DgAlgebra>) -> Self {
        let f = algebra.field();
        let unit = algebra.unit();
        let actions = (0..algebra.dim())
            .map(|i| if i == unit { Matrix::identity(f, 1) } else { Matrix::zeros(f, 1, 1) })
            .collect();
        DgModule { algebra, degrees: vec![0], diff: Matrix::zeros(f, 1, 1), actions }
    }

    pub fn zero(algebra: Arc<DgAlgebra>) -> Self {
        let f = algebra.field();
        let actions = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        DgModule { algebra, degrees: Vec::new(), diff: Matrix::zeros(f, 0, 0), actions }
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn diff(&self) -> &Matrix {
        &self.diff
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Lowest and highest degree carrying a basis element.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.degrees.iter().min()?, *self.degrees.iter().max()?))
    }

    pub fn indices_in_degree(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Action of an algebra element given in basis coordinates.
    pub fn element_action(&self, element: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (b, &c) in element.iter().enumerate().filter(|(_, &c)| c != 0) {
            out = out.add(&self.actions[b].scale(c));
        }
        out
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let by_degree = self.index_map();
        let mut c = ChainComplex::new(self.field());
        for (&d, idx) in &by_degree {
            c.set_dim(d, idx.len());
        }
        for (&d, idx) in &by_degree {
            if let Some(lower) = by_degree.get(&(d - 1)) {
                c.set_diff(d, self.diff.block(lower, idx));
            }
        }
        c
    }

    fn index_map(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        by_degree
    }

    pub fn homology_profile(&self) -> HomologyProfile {
        self.chain_complex().homology()
    }

    /// Homology groups with cycles and boundaries in full coordinates.
    pub fn homology(&self) -> ModuleHomology {
        let f = self.field();
        let n = self.dim();
        let mut groups = BTreeMap::new();
        for (d, idx) in self.index_map() {
            let lower = self.indices_in_degree(d - 1);
            let upper = self.indices_in_degree(d + 1);
            let local = self.diff.block(&lower, &idx).kernel_basis();
            let embed = |v: Vec<Scalar>, on: &[usize]| {
                let mut full = vec![0; n];
                for (t, &i) in on.iter().enumerate() {
                    full[i] = v[t];
                }
                full
            };
            let cycles: Vec<Vec<Scalar>> = (0..local.dim()).map(|c| embed(local.vector(c), &idx)).collect();
            let boundaries: Vec<Vec<Scalar>> = (0..upper.len()).map(|c| self.diff.column(upper[c])).collect();
            let sq = Subquotient::new(Subspace::span_vectors(f, n, &cycles), Subspace::span_vectors(f, n, &boundaries));
            if sq.dim() > 0 {
                groups.insert(d, (idx, sq));
            }
        }
        ModuleHomology { groups }
    }

    /// `Σ^q X`: degrees raised by `q`, `∂` and the action twisted by `(-1)^q`
    /// and `(-1)^{q|a|}`.
    pub fn shift(&self, q: i64) -> DgModule {
        let f = self.field();
        let odd = q.rem_euclid(2) == 1;
        let diff = self.diff.scale(f.sign(odd));
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(b, x)| x.scale(f.sign(odd && self.algebra.degree(b) % 2 == 1)))
            .collect();
        DgModule { algebra: self.algebra.clone(), degrees: self.degrees.iter().map(|d| d + q).collect(), diff, actions }
    }

    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.dim() + other.dim();
        let f = self.field();
        let block = |x: &Matrix, y: &Matrix| {
            let mut m = Matrix::zeros(f, n, n);
            for r in 0..x.rows() {
                for c in 0..x.cols() {
                    m.set(r, c, x.get(r, c));
                }
            }
            for r in 0..y.rows() {
                for c in 0..y.cols() {
                    m.set(self.dim() + r, self.dim() + c, y.get(r, c));
                }
            }
            m
        };
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let actions = self.actions.iter().zip(&other.actions).map(|(x, y)| block(x, y)).collect();
        Ok(DgModule { algebra: self.algebra.clone(), degrees, diff: block(&self.diff, &other.diff), actions })
    }

    /// Restriction to a DG submodule spanned by homogeneous vectors.
    pub fn submodule(&self, sub: &Subspace) -> Result<DgModule> {
        let mut degrees = Vec::with_capacity(sub.dim());
        for c in 0..sub.dim() {
            let v = sub.vector(c);
            let d = self.homogeneous_degree(&v).ok_or_else(|| Error::Malformed("submodule basis is not homogeneous".into()))?;
            degrees.push(d);
        }
        let not_closed = || Error::Malformed("subspace is not a DG submodule".into());
        let diff = sub.restrict_operator(&self.diff).ok_or_else(not_closed)?;
        let actions = self.actions.iter().map(|x| sub.restrict_operator(x).ok_or_else(not_closed)).collect::<Result<Vec<_>>>()?;
        Ok(DgModule { algebra: self.algebra.clone(), degrees, diff, actions })
    }

    /// Quotient by a DG submodule spanned by homogeneous vectors, on the
    /// coordinate complement chosen by [`quotient_basis`].
    pub fn quotient(&self, sub: &Subspace) -> Result<(DgModule, QuotientBasis)> {
        let q = quotient_basis(self.dim(), sub)?;
        let closed = |x: &Matrix| (0..sub.dim()).all(|c| sub.contains(&x.mul_vec(&sub.vector(c))));
        if !closed(&self.diff) || !self.actions.iter().all(closed) {
            return Err(Error::Malformed("subspace is not a DG submodule".into()));
        }
        let project = |x: &Matrix| q.projection.mul(&x.select_cols(&q.positions));
        let degrees = q.positions.iter().map(|&i| self.degrees[i]).collect();
        let module = DgModule {
            algebra: self.algebra.clone(),
            degrees,
            diff: project(&self.diff),
            actions: self.actions.iter().map(project).collect(),
        };
        Ok((module, q))
    }

    pub fn homogeneous_degree(&self, v: &[Scalar]) -> Option<i64> {
        let mut deg = None;
        for (i, _) in v.iter().enumerate().filter(|(_, &c)| c != 0) {
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        deg
    }

    /// `τ_{≤r}`: degrees above `r` dropped and degree `r` replaced by
    /// `X_r / ∂X_{r+1}`. Requires `r >= sup H(X)`.
    pub fn soft_truncate(&self, r: i64) -> Result<TruncatedModule> {
        if let Some(sup) = self.homology_profile().sup() {
            if r < sup {
                return Err(Error::TruncationBelowHomology { requested: r, sup });
            }
        }
        self.truncate_unchecked(r)
    }

    /// `τ_{≤r}` without the homology bound. The result has the homology of
    /// `X` in degrees `<= r` and none above.
    pub(crate) fn truncate_unchecked(&self, r: i64) -> Result<TruncatedModule> {
        let f = self.field();
        let n = self.dim();
        let mut gens: Vec<Vec<Scalar>> = (0..n)
            .filter(|&i| self.degrees[i] > r)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1 % f.characteristic();
                v
            })
            .collect();
        gens.extend(self.indices_in_degree(r + 1).into_iter().map(|j| self.diff.column(j)));
        let sub = Subspace::span_vectors(f, n, &gens);
        let (module, q) = self.quotient(&sub)?;
        Ok(TruncatedModule { module, projection: q.projection, positions: q.positions })
    }

    /// Whether every class of `H(X)` is killed by every class in `ideal`
    /// (a subspace of `H(A)` class coordinates). With `through = Some(c)`, only
    /// classes of degree `<= c` whose products also land in degree `<= c` are
    /// examined.
    pub fn homology_annihilated_by(&self, h: &HomologyAlgebra, ideal: &Subspace, through: Option<i64>) -> bool {
        let hx = self.homology();
        let f = self.field();
        for c in 0..ideal.dim() {
            let class = ideal.vector(c);
            let mut rep = vec![0; self.algebra.dim()];
            for (u, &x) in class.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (i, &y) in h.rep(u).iter().enumerate() {
                    rep[i] = f.mul_add(rep[i], x, y);
                }
            }
            let act = self.element_action(&rep);
            for (&deg, (_, sq)) in &hx.groups {
                if through.is_some_and(|c| deg > c) {
                    continue;
                }
                for k in 0..sq.dim() {
                    let image = act.mul_vec(&sq.rep(k));
                    let Some(d) = self.homogeneous_degree(&image) else {
                        if image.iter().all(|&x| x == 0) {
                            continue;
                        }
                        return false;
                    };
                    if through.is_some_and(|c| d > c) {
                        continue;
                    }
                    match hx.groups.get(&d) {
                        Some((_, target)) if target.is_boundary(&image) => {}
                        Some(_) => return false,
                        None => {}
                    }
                }
            }
        }
        true
    }
}

/// A soft truncation together with the surjection onto it.
#[derive(Clone, Debug)]
pub struct TruncatedModule {
    pub module: DgModule,
    /// `dim(τ X) x dim(X)`.
    pub projection: Matrix,
    /// Basis elements of `X` kept as the basis of `τ X`.
    pub positions: Vec<usize>,
}

/// `X ⊗_A Y` for finite DG modules, computed as a quotient of `X ⊗_k Y`.
///
/// Basis index `x * dim Y + y`; `∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y`, and
/// the relations are `(x a) ⊗ y = x ⊗ (a y)` with `x a = (-1)^{|a||x|} a x`.
/// Quadratic in size, so this is meant for small inputs and cross-checks.
pub fn tensor_finite(x: &DgModule, y: &DgModule) -> Result<DgModule> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let a = &*x.algebra;
    let ix = Matrix::identity(f, x.dim());
    let iy = Matrix::identity(f, y.dim());
    let mut eps = Matrix::zeros(f, x.dim(), x.dim());
    for i in 0..x.dim() {
        eps.set(i, i, f.sign(x.degrees[i].rem_euclid(2) == 1));
    }
    let diff = x.diff.kronecker(&iy).add(&eps.kronecker(&y.diff));
    let degrees: Vec<i64> = x.degrees.iter().flat_map(|&dx| y.degrees.iter().map(move |&dy| dx + dy)).collect();
    let mut relations: Vec<Vec<Scalar>> = Vec::new();
    for b in a.positive_indices() {
        let mut right = x.actions[b].clone();
        if a.degree(b) % 2 == 1 {
            for j in 0..x.dim() {
                if x.degrees[j].rem_euclid(2) == 1 {
                    for i in 0..x.dim() {
                        right.set(i, j, f.neg(right.get(i, j)));
                    }
                }
            }
        }
        let rel = right.kronecker(&iy).sub(&ix.kronecker(&y.actions[b]));
        relations.extend(rel.columns().into_iter().filter(|v| v.iter().any(|&c| c != 0)));
    }
    let actions = x.actions.iter().map(|m| m.kronecker(&iy)).collect();
    let whole = DgModule { algebra: x.algebra.clone(), degrees, diff, actions };
    let sub = Subspace::span_vectors(f, whole.dim(), &relations);
    Ok(whole.quotient(&sub)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn lambda() -> Arc<DgAlgebra> {
        Arc::new(DgAlgebra::exterior(field(), 1))
    }

    #[test]
    fn algebra_and_residue_field_are_modules() {
        let a = lambda();
        let m = DgModule::from_algebra(a.clone());
        m.check_axioms().unwrap();
        assert_eq!(m.homology_profile().dense(0, 1), vec![1, 1]);
        let k = DgModule::residue_field(a);
        k.check_axioms().unwrap();
        assert_eq!(k.homology_profile().amp(), Some(0));
    }

    #[test]
    fn shift_moves_profile() {
        let a = lambda();
        let m = DgModule::from_algebra(a);
        for q in -3..=3 {
            let s = m.shift(q);
            s.check_axioms().unwrap();
            assert_eq!(s.homology_profile(), m.homology_profile().shifted(q));
        }
    }

    #[test]
    fn acyclic_cone_has_zero_profile() {
        // k·u (deg 1) -> k·v (deg 0) with ∂u = v over k.
        let f = field();
        let a = Arc::new(DgAlgebra::ground_field(f));
        let d = Matrix::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        let m = DgModule::new(a, vec![0, 1], d, vec![Matrix::identity(f, 2)]).unwrap();
        assert!(m.homology_profile().is_zero());
        assert_eq!(m.homology_profile().to_string(), "zero");
    }

    #[test]
    fn bad_leibniz_is_rejected() {
        // e·v0 = v1 and ∂v1 = v0 give ∂(e v0) = v0, but ∂e = 0 and ∂v0 = 0.
        let f = field();
        let a = lambda();
        let d = Matrix::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        let e = Matrix::from_rows(f, &[vec![0, 0], vec![1, 0]]);
        let err = DgModule::new(a, vec![0, 1], d, vec![Matrix::identity(f, 2), e]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: Axiom::Leibniz, .. }));
    }

    #[test]
    fn truncation_of_algebra_module() {
        let a = lambda();
        let m = DgModule::from_algebra(a);
        let t = m.soft_truncate(1).unwrap();
        assert_eq!(t.module, m);
        assert!(matches!(m.soft_truncate(0), Err(Error::TruncationBelowHomology { .. })));
    }

    #[test]
    fn finite_tensor_units() {
        let a = lambda();
        let am = DgModule::from_algebra(a.clone());
        let k = DgModule::residue_field(a);
        let t = tensor_finite(&am, &k).unwrap();
        t.check_axioms().unwrap();
        assert_eq!(t.dim(), 1);
        let t = tensor_finite(&k, &k).unwrap();
        assert_eq!(t.dim(), 1);
        let t = tensor_finite(&am, &am).unwrap();
        assert_eq!(t.homology_profile(), am.homology_profile());
    }
}
