use std::sync::Arc;

use serde::Serialize;

use super::finite::DgModule;
use super::semifree::SemifreeModule;
use crate::dgalgebra::DgAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};

/// A minimal semifree resolution `φ: F -> Y` built through semibasis degree `cutoff`.
#[derive(Clone, Debug)]
pub struct SemifreeResolution {
    pub semifree: SemifreeModule,
    /// `φ(e_j)` in the coordinates of `Y`.
    pub images: Vec<Vec<Scalar>>,
    pub certificate: ResolutionCertificate,
}

/// What a resolution is known to satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionCertificate {
    pub cutoff: i64,
    /// `φ` is a quasi-isomorphism, so `F` is a complete (finite) resolution.
    pub complete: bool,
    /// No differential entry has a unit coefficient.
    pub minimal: bool,
    pub semibasis_degrees: Vec<i64>,
}

impl SemifreeResolution {
    /// `φ` on the expanded basis: column `j * dim A + a` is `b_a φ(e_j)`.
    pub fn comparison_map(&self, y: &DgModule) -> Matrix {
        comparison_map(&self.semifree, &self.images, y)
    }

    pub fn is_complete(&self) -> bool {
        self.certificate.complete
    }
}

fn comparison_map(l: &SemifreeModule, images: &[Vec<Scalar>], y: &DgModule) -> Matrix {
    let n = l.algebra().dim();
    let mut phi = Matrix::zeros(y.field(), y.dim(), l.len() * n);
    for (j, img) in images.iter().enumerate() {
        for b in 0..n {
            let v = y.action(b).mul_vec(img);
            for (r, &c) in v.iter().enumerate() {
                phi.set(r, j * n + b, c);
            }
        }
    }
    phi
}

/// Cycles of `X` in degree `d`, in full coordinates.
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

fn boundaries(x: &DgModule, d: i64) -> Subspace {
    let vectors: Vec<Vec<Scalar>> = x.indices_in_degree(d + 1).into_iter().map(|j| x.diff().column(j)).collect();
    Subspace::span_vectors(x.field(), x.dim(), &vectors)
}

/// Whether `H_d(φ)` is bijective for every `d`.
fn is_quasi_isomorphism(f: &DgModule, y: &DgModule, phi: &Matrix) -> bool {
    let (lo, hi) = match (f.degree_range(), y.degree_range()) {
        (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return true,
    };
    let pf = f.homology_profile();
    let py = y.homology_profile();
    if pf != py {
        return false;
    }
    (lo..=hi).all(|d| {
        let image = cycles(f, d).image(phi).sum(&boundaries(y, d));
        image.dim() == cycles(y, d).dim()
    })
}

struct Builder {
    algebra: Arc<DgAlgebra>,
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// Column-major: `columns[j][i]` is `m_ij`.
    columns: Vec<Vec<Vec<Scalar>>>,
    images: Vec<Vec<Scalar>>,
}

impl Builder {
    fn module(&self) -> SemifreeModule {
        let t = self.degrees.len();
        let n = self.algebra.dim();
        let mut entries = vec![vec![0; n]; t * t];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, m) in col.iter().enumerate() {
                entries[i * t + j] = m.clone();
            }
        }
        SemifreeModule::from_dense(self.algebra.clone(), self.labels.clone(), self.degrees.clone(), entries)
    }

    fn push(&mut self, degree: i64, boundary: Vec<Vec<Scalar>>, image: Vec<Scalar>) {
        let n = self.algebra.dim();
        for col in &mut self.columns {
            col.push(vec![0; n]);
        }
        let t = self.degrees.len() + 1;
        let mut col = boundary;
        col.resize(t, vec![0; n]);
        self.columns.push(col);
        self.labels.push(format!("g{}", t - 1));
        self.degrees.push(degree);
        self.images.push(image);
    }
}

/// Degreewise cycle killing from `inf H(Y)` through `cutoff`.
///
/// In degree `d`, new generators first kill a complement of the boundaries in
/// `ker H_{d-1}(φ)` (choosing representatives without unit coefficients), then
/// cover a complement of `im H_d(φ)` in `H_d(Y)`. Stops early once `φ` is a
/// quasi-isomorphism.
pub fn minimal_semifree_resolution(y: &DgModule, cutoff: i64) -> Result<SemifreeResolution> {
    let hy = y.homology_profile();
    let Some(lo) = hy.inf() else {
        return Err(Error::ZeroModule);
    };
    if cutoff < lo {
        return Err(Error::CutoffTooSmall { r: cutoff, sup: lo });
    }
    let algebra = y.algebra().clone();
    let fld = algebra.field();
    let n = algebra.dim();
    let unit = algebra.unit();
    let mut b = Builder { algebra: algebra.clone(), labels: Vec::new(), degrees: Vec::new(), columns: Vec::new(), images: Vec::new() };
    let mut minimal = true;
    let mut complete = false;

    for d in lo..=cutoff {
        // Kill ker H_{d-1}(φ).
        if !b.degrees.is_empty() {
            let l = b.module();
            let f = l.expand();
            let phi = comparison_map(&l, &b.images, y);
            let z = cycles(&f, d - 1);
            let bf = boundaries(&f, d - 1);
            let by = boundaries(y, d - 1);
            let phi_z = phi.mul(z.basis());
            let stacked = phi_z.hstack(by.basis());
            let sol = stacked.kernel_basis();
            let coeffs: Vec<Vec<Scalar>> = (0..sol.dim()).map(|c| sol.vector(c)[..z.dim()].to_vec()).collect();
            let kernel = Subspace::span_vectors(fld, f.dim(), &coeffs.iter().map(|c| z.basis().mul_vec(c)).collect::<Vec<_>>()).sum(&bf);
            let unit_slots: Vec<usize> = (0..l.len()).filter(|&j| l.degree(j) == d - 1).map(|j| j * n + unit).collect();
            let non_unit: Vec<usize> = (0..f.dim()).filter(|i| !unit_slots.contains(i)).collect();
            let u = Subspace::coordinate(fld, f.dim(), &non_unit);
            let good = kernel.intersection(&u);
            let mut current = bf.clone();
            let mut picked = Vec::new();
            for c in 0..good.dim() {
                let v = good.vector(c);
                if !current.contains(&v) {
                    current = current.sum(&Subspace::span_vectors(fld, f.dim(), std::slice::from_ref(&v)));
                    picked.push(v);
                }
            }
            if current.dim() < kernel.dim() {
                minimal = false;
                for c in 0..kernel.dim() {
                    let v = kernel.vector(c);
                    if !current.contains(&v) {
                        current = current.sum(&Subspace::span_vectors(fld, f.dim(), std::slice::from_ref(&v)));
                        picked.push(v);
                    }
                }
            }
            let ydeg = y.indices_in_degree(d);
            let solver = y.diff().select_cols(&ydeg).solver();
            for z in picked {
                let target = phi.mul_vec(&z);
                let local = solver.solve(&target).expect("kernel classes map to boundaries");
                let mut image = vec![0; y.dim()];
                for (t, &i) in ydeg.iter().enumerate() {
                    image[i] = local[t];
                }
                let boundary: Vec<Vec<Scalar>> = (0..l.len()).map(|i| z[i * n..(i + 1) * n].to_vec()).collect();
                b.push(d, boundary, image);
            }
        }
        // Cover coker H_d(φ).
        let l = b.module();
        let f = l.expand();
        let phi = comparison_map(&l, &b.images, y);
        let mut covered = cycles(&f, d).image(&phi).sum(&boundaries(y, d));
        let zy = cycles(y, d);
        for c in 0..zy.dim() {
            let v = zy.vector(c);
            if !covered.contains(&v) {
                covered = covered.sum(&Subspace::span_vectors(fld, y.dim(), std::slice::from_ref(&v)));
                b.push(d, Vec::new(), v);
            }
        }
        let l = b.module();
        let phi = comparison_map(&l, &b.images, y);
        if is_quasi_isomorphism(&l.expand(), y, &phi) {
            complete = true;
            break;
        }
    }
    let semifree = b.module();
    minimal &= semifree.is_minimal();
    let certificate = ResolutionCertificate { cutoff, complete, minimal, semibasis_degrees: semifree.degrees().to_vec() };
    Ok(SemifreeResolution { semifree, images: b.images, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    fn lambda() -> Arc<DgAlgebra> {
        Arc::new(DgAlgebra::exterior(PrimeField::new(32003).unwrap(), 1))
    }

    #[test]
    fn algebra_resolves_itself() {
        let a = lambda();
        let y = DgModule::from_algebra(a);
        let r = minimal_semifree_resolution(&y, 5).unwrap();
        assert!(r.is_complete());
        assert_eq!(r.semifree.degrees(), &[0]);
    }

    #[test]
    fn residue_field_over_exterior() {
        let a = lambda();
        let k = DgModule::residue_field(a);
        let r = minimal_semifree_resolution(&k, 6).unwrap();
        assert!(!r.is_complete());
        assert!(r.certificate.minimal);
        assert_eq!(r.semifree.degrees(), &[0, 2, 4, 6]);
        for j in 1..4 {
            assert_eq!(r.semifree.entry(j - 1, j), &[0, 1]);
        }
        let f = r.semifree.expand();
        f.check_axioms().unwrap();
        let phi = r.comparison_map(&k);
        // φ is a chain map and an isomorphism on homology below the cutoff.
        assert_eq!(k.diff().mul(&phi), phi.mul(f.diff()));
        assert_eq!(f.homology_profile().below(6), k.homology_profile());
    }

    #[test]
    fn contractible_summand_is_ignored() {
        let a = lambda();
        // Over Λ(e): A ⊕ Σk ⊕ (A-cone on A), the last summand contractible.
        let am = DgModule::from_algebra(a.clone());
        let cone_a = {
            let sum = am.direct_sum(&am.shift(1)).unwrap();
            let mut d = sum.diff().clone();
            // ∂(σb) = b on the shifted copy.
            for i in 0..2 {
                d.set(i, 2 + i, 1);
            }
            DgModule::new(a.clone(), sum.degrees().to_vec(), d, sum.actions().to_vec()).unwrap()
        };
        assert!(cone_a.homology_profile().is_zero());
        let y = am.direct_sum(&DgModule::residue_field(a.clone()).shift(1)).unwrap().direct_sum(&cone_a).unwrap();
        let r = minimal_semifree_resolution(&y, 4).unwrap();
        assert!(r.certificate.minimal);
        assert_eq!(r.semifree.degrees()[..2], [0, 1]);
        let fx = r.semifree.expand();
        assert_eq!(fx.homology_profile().below(4), y.homology_profile().below(4));
    }
}
