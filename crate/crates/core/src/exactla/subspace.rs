use super::field::{PrimeField, Scalar};
use super::matrix::{Matrix, Solver};
use crate::error::{Error, Result};

/// A subspace of `F_p^n`, stored as a matrix with independent columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    /// Rejects bases with dependent columns.
    pub fn from_basis(basis: Matrix) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::DependentColumns);
        }
        Ok(Subspace { basis })
    }

    pub(crate) fn from_independent_columns(basis: Matrix) -> Self {
        debug_assert_eq!(basis.rank(), basis.cols());
        Subspace { basis }
    }

    /// Span of the columns of `m` (pivot columns kept).
    pub fn span(m: &Matrix) -> Self {
        m.column_space()
    }

    pub fn span_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::span(&Matrix::from_columns(field, ambient, vectors))
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate(field: PrimeField, ambient: usize, positions: &[usize]) -> Self {
        let mut m = Matrix::zeros(field, ambient, positions.len());
        for (j, &p) in positions.iter().enumerate() {
            m.set(p, j, 1 % field.characteristic());
        }
        Subspace { basis: m }
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.column(i)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        self.basis.solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient());
        let f = self.field();
        let stacked = self.basis.hstack(&other.basis.scale(f.neg(1)));
        let ker = stacked.kernel_basis();
        let coeffs = ker.basis().select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&self.basis.mul(&coeffs))
    }

    /// Image under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        Subspace::span(&map.mul(&self.basis))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.basis.solve(v)
    }

    /// Matrix of an operator preserving this subspace, in this basis.
    /// `None` if the subspace is not invariant.
    pub fn restrict_operator(&self, op: &Matrix) -> Option<Matrix> {
        let images = op.mul(&self.basis);
        self.basis.solve_matrix(&images)
    }

    /// Restriction of a map into another subspace's coordinates.
    pub fn restrict_map(&self, map: &Matrix, target: &Subspace) -> Option<Matrix> {
        let images = map.mul(&self.basis);
        target.basis.solve_matrix(&images)
    }
}

/// A complement to a subspace spanned by coordinate vectors, with the
/// projection onto complement coordinates along the subspace.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    pub complement: Subspace,
    /// Coordinate positions spanning the complement.
    pub positions: Vec<usize>,
    /// `dim(complement) x ambient`; `v - complement * (projection * v)` lies in the subspace.
    pub projection: Matrix,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.mul_vec(v)
    }
}

/// Deterministic complement of `sub`: coordinate vectors at the positions
/// that are not pivots of `sub`'s column-echelon form.
pub fn quotient_basis(ambient_dim: usize, sub: &Subspace) -> Result<QuotientBasis> {
    if sub.ambient() != ambient_dim {
        return Err(Error::Malformed(format!(
            "subspace lives in dimension {}, expected {ambient_dim}",
            sub.ambient()
        )));
    }
    let f = sub.field();
    let ech = sub.basis().transpose().echelon();
    if ech.pivots.len() != sub.dim() {
        return Err(Error::DependentColumns);
    }
    let mut is_pivot = vec![false; ambient_dim];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let positions: Vec<usize> = (0..ambient_dim).filter(|&i| !is_pivot[i]).collect();
    let complement = Subspace::coordinate(f, ambient_dim, &positions);
    let stacked = sub.basis().hstack(complement.basis());
    let inv = stacked.inverse().ok_or(Error::DependentColumns)?;
    let rows: Vec<usize> = (sub.dim()..ambient_dim).collect();
    let projection = inv.select_rows(&rows);
    Ok(QuotientBasis { complement, positions, projection })
}

/// `cycles / boundaries` with chosen representatives, e.g. a homology group.
#[derive(Debug, Clone)]
pub struct Subquotient {
    cycles: Subspace,
    boundaries: Subspace,
    reps: Matrix,
    solver: Solver,
}

impl Subquotient {
    /// `boundaries` must be contained in `cycles`; representatives are the
    /// cycle basis vectors independent of the boundaries, in order.
    pub fn new(cycles: Subspace, boundaries: Subspace) -> Self {
        let nb = boundaries.dim();
        let stacked = boundaries.basis().hstack(cycles.basis());
        let pivots = stacked.echelon().pivots;
        debug_assert!(pivots.iter().take(nb).copied().eq(0..nb), "boundaries not independent");
        let rep_cols: Vec<usize> = pivots.iter().filter(|&&c| c >= nb).map(|&c| c - nb).collect();
        let reps = cycles.basis().select_cols(&rep_cols);
        let solver = boundaries.basis().hstack(&reps).solver();
        debug_assert_eq!(nb + reps.cols(), cycles.dim(), "boundaries not inside cycles");
        Subquotient { cycles, boundaries, reps, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn reps(&self) -> &Matrix {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> Vec<Scalar> {
        self.reps.column(i)
    }

    /// Class coordinates of a cycle; `None` if `v` is not a cycle.
    pub fn class_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let x = self.solver.solve(v)?;
        Some(x[self.boundaries.dim()..].to_vec())
    }

    pub fn is_boundary(&self, v: &[Scalar]) -> bool {
        self.class_of(v).is_some_and(|c| c.iter().all(|&x| x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let f = field();
        let q = quotient_basis(3, &Subspace::zero(f, 3)).unwrap();
        assert_eq!(q.dim(), 3);
        let q = quotient_basis(3, &Subspace::full(f, 3)).unwrap();
        assert_eq!(q.dim(), 0);
        let s = Subspace::span_vectors(f, 3, &[vec![1, 1, 0]]);
        let q = quotient_basis(3, &s).unwrap();
        assert_eq!(q.positions, vec![1, 2]);
        // (1,0,0) = (1,1,0) - (0,1,0)
        assert_eq!(q.project(&[1, 0, 0]), vec![f.neg(1), 0]);
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = field();
        let m = Matrix::from_columns(f, 2, &[vec![1, 1], vec![2, 2]]);
        assert_eq!(Subspace::from_basis(m).unwrap_err(), Error::DependentColumns);
        assert!(quotient_basis(2, &Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn subquotient_classes() {
        let f = field();
        let cycles = Subspace::coordinate(f, 3, &[0, 1]);
        let bounds = Subspace::span_vectors(f, 3, &[vec![1, 1, 0]]);
        let h = Subquotient::new(cycles, bounds);
        assert_eq!(h.dim(), 1);
        assert!(h.is_boundary(&[2, 2, 0]));
        assert!(h.class_of(&[0, 0, 1]).is_none());
        assert_eq!(h.class_of(&[1, 0, 0]).unwrap().len(), 1);
    }

    #[test]
    fn intersection_dims() {
        let f = field();
        let a = Subspace::coordinate(f, 3, &[0, 1]);
        let b = Subspace::coordinate(f, 3, &[1, 2]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
