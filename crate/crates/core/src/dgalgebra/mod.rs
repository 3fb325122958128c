//! Finite-dimensional graded-commutative DG algebras over `F_p`.
//!
//! An algebra is given by explicit tables over a homogeneous basis: structure
//! constants for the product and a matrix for the differential. Every axiom
//! is checked exhaustively on basis tuples when the algebra is validated.

mod builders;
mod homology;
mod truncate;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Axiom, Error, Result};
use crate::exactla::{ChainComplex, HomologyProfile, Matrix, PrimeField, Scalar, Subspace};

pub use homology::HomologyAlgebra;
pub use truncate::TruncatedAlgebra;

/// Unvalidated algebra tables, in the sparse form used by the JSON schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawDgAlgebra {
    pub field: PrimeField,
    pub basis: Vec<(String, usize)>,
    pub unit: usize,
    /// `(i, j, [(k, c)])` meaning `b_i b_j = sum c b_k`.
    pub mult: Vec<(usize, usize, Vec<(usize, i64)>)>,
    /// `(j, [(i, d)])` meaning `d(b_j) = sum d b_i`.
    pub diff: Vec<(usize, Vec<(usize, i64)>)>,
}

/// A validated local DG algebra with `A_0 = k * 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgAlgebra {
    field: PrimeField,
    labels: Vec<String>,
    degrees: Vec<usize>,
    unit: usize,
    /// `mult[(i * n + j) * n + k]` is the coefficient of `b_k` in `b_i b_j`.
    mult: Vec<Scalar>,
    diff: Matrix,
}

/// Validates raw tables; see [`DgAlgebra`] for the checked axioms.
pub fn validate_dg_algebra(raw: &RawDgAlgebra) -> Result<DgAlgebra> {
    let f = raw.field;
    let n = raw.basis.len();
    if n == 0 {
        return Err(Error::Malformed("algebra has an empty basis".into()));
    }
    if raw.unit >= n {
        return Err(Error::Malformed(format!("unit index {} out of range", raw.unit)));
    }
    let mut mult = vec![0; n * n * n];
    for (i, j, terms) in &raw.mult {
        for &(k, c) in terms {
            if *i >= n || *j >= n || k >= n {
                return Err(Error::Malformed(format!("product entry ({i},{j})->{k} out of range")));
            }
            let idx = (i * n + j) * n + k;
            mult[idx] = f.add(mult[idx], f.from_i64(c));
        }
    }
    let mut diff = Matrix::zeros(f, n, n);
    for (j, terms) in &raw.diff {
        for &(i, d) in terms {
            if *j >= n || i >= n {
                return Err(Error::Malformed(format!("differential entry {j}->{i} out of range")));
            }
            diff.add_at(i, *j, f.from_i64(d));
        }
    }
    let alg = DgAlgebra {
        field: f,
        labels: raw.basis.iter().map(|(l, _)| l.clone()).collect(),
        degrees: raw.basis.iter().map(|&(_, d)| d).collect(),
        unit: raw.unit,
        mult,
        diff,
    };
    alg.check_axioms()?;
    Ok(alg)
}

impl DgAlgebra {
    pub(crate) fn from_tables(
        field: PrimeField,
        labels: Vec<String>,
        degrees: Vec<usize>,
        unit: usize,
        mult: Vec<Scalar>,
        diff: Matrix,
    ) -> Result<Self> {
        let alg = DgAlgebra { field, labels, degrees, unit, mult, diff };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        let f = self.field;
        let violation = |axiom, witness: &[usize]| Err(Error::AxiomViolation { axiom, witness: witness.to_vec() });

        let deg0: Vec<usize> = (0..n).filter(|&i| self.degrees[i] == 0).collect();
        if deg0 != [self.unit] {
            return Err(Error::NotLocal(format!(
                "degree-0 basis elements {:?}, unit {}",
                deg0, self.unit
            )));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.mult[(i * n + j) * n + k] != 0 && self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return violation(Axiom::Grading, &[i, j, k]);
                    }
                }
            }
            for k in 0..n {
                if self.diff.get(k, i) != 0 && self.degrees[k] + 1 != self.degrees[i] {
                    return violation(Axiom::Grading, &[i, k]);
                }
            }
        }
        for j in 0..n {
            let e = unit_vec(f, n, j);
            if self.product(self.unit, j) != e.as_slice() || self.product(j, self.unit) != e.as_slice() {
                return violation(Axiom::Unit, &[j]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul(&ij, &unit_vec(f, n, k));
                    let jk = self.product(j, k).to_vec();
                    let right = self.mul(&unit_vec(f, n, i), &jk);
                    if left != right {
                        return violation(Axiom::Associativity, &[i, j, k]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let odd = self.degrees[i] * self.degrees[j] % 2 == 1;
                let swapped: Vec<Scalar> = self.product(j, i).iter().map(|&c| f.mul(c, f.sign(odd))).collect();
                if self.product(i, j) != swapped.as_slice() {
                    return violation(Axiom::GradedCommutativity, &[i, j]);
                }
            }
            if self.degrees[i] % 2 == 1 && self.product(i, i).iter().any(|&c| c != 0) {
                return violation(Axiom::OddSquare, &[i]);
            }
        }
        let d2 = self.diff.mul(&self.diff);
        if let Some(j) = (0..n).find(|&j| (0..n).any(|i| d2.get(i, j) != 0)) {
            return violation(Axiom::Differential, &[j]);
        }
        for i in 0..n {
            let di = self.diff.column(i);
            for j in 0..n {
                let dj = self.diff.column(j);
                let lhs = self.diff.mul_vec(self.product(i, j));
                let a = self.mul(&di, &unit_vec(f, n, j));
                let b = self.mul(&unit_vec(f, n, i), &dj);
                let s = f.sign(self.degrees[i] % 2 == 1);
                let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(&x, &y)| f.mul_add(x, s, y)).collect();
                if lhs != rhs {
                    return violation(Axiom::Leibniz, &[i, j]);
                }
            }
        }
        let one = unit_vec(f, n, self.unit);
        if self.diff.solve(&one).is_some() {
            return Err(Error::HomologyZero);
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `sup(A)`: the top degree carrying a basis element.
    pub fn top_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn indices_in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] > 0).collect()
    }

    /// Coordinates of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.mult[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let n = self.dim();
        let mut out = vec![0; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                for (k, &m) in self.product(i, j).iter().enumerate() {
                    if m != 0 {
                        out[k] = f.mul_add(out[k], c, m);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> b_i x`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|k| self.product(i, k).to_vec()).collect();
        Matrix::from_columns(self.field, n, &cols)
    }

    pub fn diff(&self) -> &Matrix {
        &self.diff
    }

    pub fn unit_vector(&self) -> Vec<Scalar> {
        unit_vec(self.field, self.dim(), self.unit)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn element_degree(&self, v: &[Scalar]) -> Option<usize> {
        let mut deg = None;
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                match deg {
                    None => deg = Some(self.degrees[i]),
                    Some(d) if d != self.degrees[i] => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            by_degree.entry(d).or_default().push(i);
        }
        let mut c = ChainComplex::new(self.field);
        for (&d, idx) in &by_degree {
            c.set_dim(d as i64, idx.len());
        }
        for (&d, idx) in &by_degree {
            if d == 0 {
                continue;
            }
            if let Some(lower) = by_degree.get(&(d - 1)) {
                c.set_diff(d as i64, self.diff.block(lower, idx));
            }
        }
        c
    }

    pub fn homology_profile(&self) -> HomologyProfile {
        self.chain_complex().homology()
    }

    /// `s = amp(H(A))`.
    pub fn homology_amplitude(&self) -> usize {
        self.homology_profile().amp().expect("validated algebras have nonzero homology") as usize
    }

    /// Basis of `m_A^n = (A_+)^n`; `n = 0` gives all of `A`.
    pub fn augmentation_power(&self, n: usize) -> Subspace {
        let f = self.field;
        let dim = self.dim();
        if n == 0 {
            return Subspace::full(f, dim);
        }
        let positive = self.positive_indices();
        let mut current = Subspace::coordinate(f, dim, &positive);
        for _ in 1..n {
            if current.is_zero() {
                break;
            }
            let mut products = Vec::new();
            for c in 0..current.dim() {
                let v = current.vector(c);
                for &k in &positive {
                    products.push(self.mul(&v, &unit_vec(f, dim, k)));
                }
            }
            current = Subspace::span_vectors(f, dim, &products);
        }
        current
    }

    /// Positive-degree basis indices whose product is nonzero, if `m_A^n != 0`.
    pub fn nonzero_power_witness(&self, n: usize) -> Option<Vec<usize>> {
        let positive = self.positive_indices();
        let mut stack = Vec::new();
        self.witness_search(&positive, n, 0, self.unit_vector(), &mut stack).then_some(stack)
    }

    fn witness_search(&self, pos: &[usize], left: usize, from: usize, acc: Vec<Scalar>, stack: &mut Vec<usize>) -> bool {
        if left == 0 {
            return true;
        }
        for (t, &k) in pos.iter().enumerate().skip(from) {
            let next = self.mul(&acc, &unit_vec(self.field, self.dim(), k));
            if next.iter().all(|&c| c == 0) {
                continue;
            }
            stack.push(k);
            if self.witness_search(pos, left - 1, t, next, stack) {
                return true;
            }
            stack.pop();
        }
        false
    }

    /// Graded tensor product with the Koszul sign rule.
    pub fn tensor(&self, other: &DgAlgebra) -> Result<DgAlgebra> {
        if self.field != other.field {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.field;
        let (na, nb) = (self.dim(), other.dim());
        let n = na * nb;
        let idx = |i: usize, j: usize| i * nb + j;
        let mut labels = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                let label = match (i == self.unit, j == other.unit) {
                    (true, true) => "1".to_string(),
                    (true, false) => other.labels[j].clone(),
                    (false, true) => self.labels[i].clone(),
                    (false, false) => format!("{}{}", self.labels[i], other.labels[j]),
                };
                labels.push(label);
                degrees.push(self.degrees[i] + other.degrees[j]);
            }
        }
        let mut mult = vec![0; n * n * n];
        for (a, b) in (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))) {
            for (a2, b2) in (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))) {
                let sign = f.sign(other.degrees[b] * self.degrees[a2] % 2 == 1);
                let pa = self.product(a, a2);
                let pb = other.product(b, b2);
                let base = (idx(a, b) * n + idx(a2, b2)) * n;
                for (k, &ca) in pa.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (l, &cb) in pb.iter().enumerate() {
                        if cb != 0 {
                            mult[base + idx(k, l)] = f.mul(sign, f.mul(ca, cb));
                        }
                    }
                }
            }
        }
        let mut diff = Matrix::zeros(f, n, n);
        for a in 0..na {
            for b in 0..nb {
                for k in 0..na {
                    let c = self.diff.get(k, a);
                    if c != 0 {
                        diff.add_at(idx(k, b), idx(a, b), c);
                    }
                }
                let s = f.sign(self.degrees[a] % 2 == 1);
                for l in 0..nb {
                    let c = other.diff.get(l, b);
                    if c != 0 {
                        diff.add_at(idx(a, l), idx(a, b), f.mul(s, c));
                    }
                }
            }
        }
        DgAlgebra::from_tables(f, labels, degrees, idx(self.unit, other.unit), mult, diff)
    }

    /// Rewrites the tables in the basis `b'_j = sum_k P[k][j] b_k`. `P` must be
    /// invertible, degree-preserving and fix the unit.
    pub fn change_basis(&self, p: &Matrix) -> Result<DgAlgebra> {
        let n = self.dim();
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Malformed("basis change is not invertible".into()))?;
        for j in 0..n {
            for k in 0..n {
                if p.get(k, j) != 0 && self.degrees[k] != self.degrees[j] {
                    return Err(Error::Malformed("basis change mixes degrees".into()));
                }
            }
        }
        if p.column(self.unit) != self.unit_vector() {
            return Err(Error::Malformed("basis change moves the unit".into()));
        }
        let cols = p.columns();
        let mut mult = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = inv.mul_vec(&self.mul(&cols[i], &cols[j]));
                mult[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&prod);
            }
        }
        let diff = inv.mul(&self.diff).mul(p);
        DgAlgebra::from_tables(self.field, self.labels.clone(), self.degrees.clone(), self.unit, mult, diff)
    }

    /// Tables in the sparse JSON form.
    pub fn to_raw(&self) -> RawDgAlgebra {
        let f = self.field;
        let n = self.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<(usize, i64)> = self
                    .product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, f.to_signed(c)))
                    .collect();
                if !terms.is_empty() {
                    mult.push((i, j, terms));
                }
            }
        }
        let mut diff = Vec::new();
        for j in 0..n {
            let terms: Vec<(usize, i64)> = (0..n)
                .filter(|&i| self.diff.get(i, j) != 0)
                .map(|i| (i, f.to_signed(self.diff.get(i, j))))
                .collect();
            if !terms.is_empty() {
                diff.push((j, terms));
            }
        }
        RawDgAlgebra {
            field: f,
            basis: self.labels.iter().cloned().zip(self.degrees.iter().copied()).collect(),
            unit: self.unit,
            mult,
            diff,
        }
    }
}

pub(crate) fn unit_vec(f: PrimeField, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![0; n];
    v[i] = 1 % f.characteristic();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn exterior_raw() -> RawDgAlgebra {
        RawDgAlgebra {
            field: field(),
            basis: vec![("1".into(), 0), ("e".into(), 1)],
            unit: 0,
            mult: vec![(0, 0, vec![(0, 1)]), (0, 1, vec![(1, 1)]), (1, 0, vec![(1, 1)])],
            diff: vec![],
        }
    }

    #[test]
    fn exterior_algebra_validates() {
        let a = validate_dg_algebra(&exterior_raw()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.homology_amplitude(), 1);
        assert_eq!(validate_dg_algebra(&a.to_raw()).unwrap(), a);
    }

    #[test]
    fn commutativity_violation() {
        let mut raw = RawDgAlgebra {
            field: field(),
            basis: vec![("1".into(), 0), ("x".into(), 2), ("y".into(), 2), ("xy".into(), 4)],
            unit: 0,
            mult: vec![(0, 0, vec![(0, 1)]), (0, 1, vec![(1, 1)]), (1, 0, vec![(1, 1)])],
            diff: vec![],
        };
        for j in 2..4 {
            raw.mult.push((0, j, vec![(j, 1)]));
            raw.mult.push((j, 0, vec![(j, 1)]));
        }
        raw.mult.push((1, 2, vec![(3, 1)]));
        raw.mult.push((2, 1, vec![(3, 2)]));
        let err = validate_dg_algebra(&raw).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: Axiom::GradedCommutativity, .. }), "{err:?}");
    }

    #[test]
    fn differential_square_violation() {
        // d(c) = b, d(b) = a with degrees 1,2,3 (d^2 != 0)
        let raw = RawDgAlgebra {
            field: field(),
            basis: vec![("1".into(), 0), ("a".into(), 1), ("b".into(), 2), ("c".into(), 3)],
            unit: 0,
            mult: std::iter::once((0, 0, vec![(0, 1)]))
                .chain((1..4).flat_map(|j| [(0, j, vec![(j, 1)]), (j, 0, vec![(j, 1)])]))
                .collect(),
            diff: vec![(2, vec![(1, 1)]), (3, vec![(2, 1)])],
        };
        let err = validate_dg_algebra(&raw).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: Axiom::Differential, .. }), "{err:?}");
    }

    #[test]
    fn not_local() {
        let raw = RawDgAlgebra {
            field: field(),
            basis: vec![("1".into(), 0), ("u".into(), 0)],
            unit: 0,
            mult: vec![(0, 0, vec![(0, 1)]), (0, 1, vec![(1, 1)]), (1, 0, vec![(1, 1)])],
            diff: vec![],
        };
        assert!(matches!(validate_dg_algebra(&raw), Err(Error::NotLocal(_))));
    }

    #[test]
    fn augmentation_powers_of_exterior() {
        let a = validate_dg_algebra(&exterior_raw()).unwrap();
        assert_eq!(a.augmentation_power(0).dim(), 2);
        let m1 = a.augmentation_power(1);
        assert_eq!(m1.dim(), 1);
        assert_eq!(m1.vector(0), vec![0, 1]);
        assert!(a.augmentation_power(2).is_zero());
        assert_eq!(a.nonzero_power_witness(1), Some(vec![1]));
        assert_eq!(a.nonzero_power_witness(2), None);
    }

    #[test]
    fn tensor_of_exteriors() {
        let e = DgAlgebra::exterior(field(), 1);
        let ef = e.tensor(&DgAlgebra::exterior(field(), 1)).unwrap();
        assert_eq!(ef.dim(), 4);
        assert_eq!(ef.homology_amplitude(), 2);
        assert!(ef.augmentation_power(2).dim() == 1);
        assert!(ef.augmentation_power(3).is_zero());
    }
}
