use std::fmt;

use super::field::{PrimeField, Scalar};
use super::subspace::Subspace;

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.characteristic())?;
        for r in 0..self.rows {
            let row: Vec<i64> = self.row(r).iter().map(|&v| self.field.to_signed(v)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1 % field.characteristic());
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: Scalar) {
        let idx = r * self.cols + c;
        self.data[idx] = self.field.add(self.data[idx], v);
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let p = f.characteristic() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (c, &b) in other.row(k).iter().enumerate() {
                    if b != 0 {
                        acc[c] = (acc[c] + a as u64 * b as u64) % p;
                    }
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.set(r, c, v as Scalar);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.mul_add(acc, a, b) })
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(other.row(r));
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            m.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`; row index `i * other.rows + k`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut m = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            m.set(i * other.rows + k, j * other.cols + l, f.mul(a, b));
                        }
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form. The pivot for each column is taken from the
    /// smallest remaining row index with a nonzero entry.
    pub fn echelon(&self) -> Echelon {
        let (reduced, pivots, _) = self.eliminate(false);
        Echelon { reduced, pivots }
    }

    // Gauss-Jordan elimination; optionally tracks the row transform T with T*self = reduced.
    fn eliminate(&self, track: bool) -> (Matrix, Vec<usize>, Option<Matrix>) {
        let f = self.field;
        let p = f.characteristic() as u64;
        let mut m = self.clone();
        let mut t = track.then(|| Matrix::identity(f, self.rows));
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                swap_rows(&mut m, pr, row);
                if let Some(t) = t.as_mut() {
                    swap_rows(t, pr, row);
                }
            }
            let inv = f.inv(m.get(row, col));
            scale_row(&mut m, row, inv);
            if let Some(t) = t.as_mut() {
                scale_row(t, row, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor as u64;
                axpy_row(&mut m, r, row, neg, col);
                if let Some(t) = t.as_mut() {
                    axpy_row(t, r, row, neg, 0);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots, t)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space. Each basis vector has a 1 at its free
    /// column and is then scaled so its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Subspace {
        let f = self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1 % f.characteristic();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(r, free));
            }
            normalize_leading(f, &mut v);
            vectors.push(v);
        }
        Subspace::from_independent_columns(Matrix::from_columns(f, self.cols, &vectors))
    }

    /// The column space, spanned by the pivot columns of `self`.
    pub fn column_space(&self) -> Subspace {
        let pivots = self.echelon().pivots;
        Subspace::from_independent_columns(self.select_cols(&pivots))
    }

    pub fn solver(&self) -> Solver {
        let (reduced, pivots, transform) = self.eliminate(true);
        Solver { reduced, pivots, transform: transform.expect("tracked") }
    }

    /// Some `x` with `self * x = rhs`.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver().solve(rhs)
    }

    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        let s = self.solver();
        let cols: Option<Vec<_>> = (0..rhs.cols).map(|c| s.solve(&rhs.column(c))).collect();
        cols.map(|cols| Matrix::from_columns(self.field, self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let (_, pivots, t) = self.eliminate(true);
        (pivots.len() == self.rows).then(|| t.expect("tracked"))
    }
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    let c = m.cols;
    for k in 0..c {
        m.data.swap(a * c + k, b * c + k);
    }
}

fn scale_row(m: &mut Matrix, r: usize, s: Scalar) {
    let f = m.field;
    let c = m.cols;
    for v in &mut m.data[r * c..(r + 1) * c] {
        *v = f.mul(*v, s);
    }
}

// row[dst] += factor * row[src], starting at column `from`
fn axpy_row(m: &mut Matrix, dst: usize, src: usize, factor: u64, from: usize) {
    let p = m.field.characteristic() as u64;
    let c = m.cols;
    for k in from..c {
        let s = m.data[src * c + k];
        if s != 0 {
            let d = &mut m.data[dst * c + k];
            *d = ((*d as u64 + factor * s as u64) % p) as Scalar;
        }
    }
}

pub(crate) fn normalize_leading(f: PrimeField, v: &mut [Scalar]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        if lead != 1 {
            let inv = f.inv(lead);
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
    }
}

/// Precomputed elimination for repeated solves against one matrix.
#[derive(Debug, Clone)]
pub struct Solver {
    reduced: Matrix,
    pivots: Vec<usize>,
    transform: Matrix,
}

impl Solver {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.transform.mul_vec(rhs);
        if c[self.pivots.len()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0; self.reduced.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = c[r];
        }
        Some(x)
    }
}
