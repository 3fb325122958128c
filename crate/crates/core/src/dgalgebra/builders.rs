use super::DgAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};

fn set(mult: &mut [u32], n: usize, i: usize, j: usize, k: usize, c: u32) {
    mult[(i * n + j) * n + k] = c;
}

fn unit_products(mult: &mut [u32], n: usize) {
    for j in 0..n {
        set(mult, n, 0, j, j, 1);
        set(mult, n, j, 0, j, 1);
    }
}

impl DgAlgebra {
    /// The ground field `k` in degree 0.
    pub fn ground_field(f: PrimeField) -> DgAlgebra {
        DgAlgebra::from_tables(f, vec!["1".into()], vec![0], 0, vec![1], Matrix::zeros(f, 1, 1))
            .expect("k is a DG algebra")
    }

    /// `Λ(e)` with `|e| = degree` and zero differential.
    pub fn exterior(f: PrimeField, degree: usize) -> DgAlgebra {
        assert!(degree > 0);
        let n = 2;
        let mut mult = vec![0; n * n * n];
        unit_products(&mut mult, n);
        DgAlgebra::from_tables(f, vec!["1".into(), "e".into()], vec![0, degree], 0, mult, Matrix::zeros(f, n, n))
            .expect("exterior algebra is valid")
    }

    /// `k[y]/(y^height)` with `|y| = degree` (even) and zero differential.
    pub fn truncated_polynomial(f: PrimeField, degree: usize, height: usize) -> Result<DgAlgebra> {
        if degree == 0 || degree % 2 == 1 || height == 0 {
            return Err(Error::Malformed("truncated polynomial needs even positive degree".into()));
        }
        let n = height;
        let mut mult = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    set(&mut mult, n, i, j, i + j, 1);
                }
            }
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            })
            .collect();
        let degrees = (0..n).map(|i| i * degree).collect();
        DgAlgebra::from_tables(f, labels, degrees, 0, mult, Matrix::zeros(f, n, n))
    }

    /// `k[y]/(y^2) ⊗ Λ(e)` with `|y| = 2c`, `|e| = 2c + 1` and `d(e) = y`.
    /// Its homology is `k ⊕ k·ye`, so `s = 4c + 1`.
    pub fn acyclic_pair(f: PrimeField, c: usize) -> DgAlgebra {
        assert!(c > 0);
        let n = 4;
        // basis: 1, y, e, ye
        let mut mult = vec![0; n * n * n];
        unit_products(&mut mult, n);
        set(&mut mult, n, 1, 2, 3, 1);
        set(&mut mult, n, 2, 1, 3, 1);
        let mut diff = Matrix::zeros(f, n, n);
        diff.set(1, 2, 1);
        DgAlgebra::from_tables(
            f,
            vec!["1".into(), "y".into(), "e".into(), "ye".into()],
            vec![0, 2 * c, 2 * c + 1, 4 * c + 1],
            0,
            mult,
            diff,
        )
        .expect("acyclic pair is valid")
    }

    /// Trivial extension `k ⋉ V`: all products of positive elements vanish.
    /// `diff` acts on `V` (columns are images of the `V` basis).
    pub fn trivial_extension(f: PrimeField, degrees: &[usize], diff: &Matrix) -> Result<DgAlgebra> {
        let nv = degrees.len();
        if degrees.contains(&0) {
            return Err(Error::NotLocal("trivial extension needs positive degrees".into()));
        }
        if diff.rows() != nv || diff.cols() != nv {
            return Err(Error::Malformed("differential has the wrong shape".into()));
        }
        let n = nv + 1;
        let mut mult = vec![0; n * n * n];
        unit_products(&mut mult, n);
        let mut full = Matrix::zeros(f, n, n);
        for i in 0..nv {
            for j in 0..nv {
                full.set(i + 1, j + 1, diff.get(i, j));
            }
        }
        let mut labels = vec!["1".to_string()];
        labels.extend((0..nv).map(|i| format!("v{i}")));
        let mut all = vec![0];
        all.extend_from_slice(degrees);
        DgAlgebra::from_tables(f, labels, all, 0, mult, full)
    }
}
