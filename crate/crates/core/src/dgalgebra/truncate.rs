use super::DgAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Matrix, Subspace};

/// The soft truncation `τ_{≤r}(A)` and the surjection `A -> τ_{≤r}(A)`.
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    pub algebra: DgAlgebra,
    /// `dim(A') x dim(A)`.
    pub projection: Matrix,
    /// For each basis element of `A'`, the `A` basis element it came from.
    pub origin: Vec<usize>,
}

impl DgAlgebra {
    /// Degrees below `r` unchanged, degree `r` replaced by `A_r / im d_{r+1}`,
    /// higher degrees dropped. Requires `r >= sup H(A)`.
    pub fn soft_truncate(&self, r: usize) -> Result<TruncatedAlgebra> {
        let f = self.field();
        let n = self.dim();
        let sup_h = self.homology_profile().sup().unwrap_or(0);
        if (r as i64) < sup_h {
            return Err(Error::TruncationBelowHomology { requested: r as i64, sup: sup_h });
        }
        let top = self.indices_in_degree(r);
        let above = self.indices_in_degree(r + 1);
        let boundaries = Subspace::span(&self.diff().block(&top, &above));
        let q = quotient_basis(top.len(), &boundaries)?;

        let mut origin: Vec<usize> = (0..n).filter(|&i| self.degree(i) < r).collect();
        origin.extend(q.positions.iter().map(|&p| top[p]));
        let m = origin.len();
        let mut projection = Matrix::zeros(f, m, n);
        for (new, &old) in origin.iter().enumerate() {
            if self.degree(old) < r {
                projection.set(new, old, 1 % f.characteristic());
            }
        }
        let low_count = origin.iter().filter(|&&i| self.degree(i) < r).count();
        for (t, _) in q.positions.iter().enumerate() {
            for (s, &old) in top.iter().enumerate() {
                projection.set(low_count + t, old, q.projection.get(t, s));
            }
        }

        let mut mult = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                let prod = projection.mul_vec(self.product(origin[i], origin[j]));
                mult[(i * m + j) * m..(i * m + j + 1) * m].copy_from_slice(&prod);
            }
        }
        let mut diff = Matrix::zeros(f, m, m);
        for j in 0..m {
            let image = projection.mul_vec(&self.diff().column(origin[j]));
            for (i, &c) in image.iter().enumerate() {
                diff.set(i, j, c);
            }
        }
        let labels = origin.iter().map(|&i| self.label(i).to_string()).collect();
        let degrees = origin.iter().map(|&i| self.degree(i)).collect();
        let unit = origin.iter().position(|&i| i == self.unit()).expect("unit survives");
        let algebra = DgAlgebra::from_tables(f, labels, degrees, unit, mult, diff)?;
        Ok(TruncatedAlgebra { algebra, projection, origin })
    }
}
