use std::sync::Arc;

use serde::Serialize;

use super::finite::DgModule;
use crate::dgalgebra::{DgAlgebra, TruncatedAlgebra};
use crate::error::{Axiom, Error, Result};
use crate::exactla::{HomologyProfile, Matrix, Scalar};

/// A semifree DG module with finite semibasis `e_1..e_t`.
///
/// `∂e_j = Σ_i m_ij e_i` with `m_ij ∈ A` homogeneous of degree
/// `d_j - d_i - 1`; coefficients are written on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct SemifreeModule {
    algebra: Arc<DgAlgebra>,
    labels: Vec<String>,
    degrees: Vec<i64>,
    /// `entries[i * t + j] = m_ij` in algebra-basis coordinates.
    entries: Vec<Vec<Scalar>>,
}

impl SemifreeModule {
    /// Builds from sparse entries `(i, j, m_ij)` and checks degrees and `∂² = 0`.
    pub fn new(algebra: Arc<DgAlgebra>, labels: Vec<String>, degrees: Vec<i64>, sparse: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let t = degrees.len();
        if labels.len() != t {
            return Err(Error::Malformed(format!("{} labels for {t} semibasis elements", labels.len())));
        }
        let n = algebra.dim();
        let mut entries = vec![vec![0; n]; t * t];
        let f = algebra.field();
        for (i, j, m) in sparse {
            if *i >= t || *j >= t || m.len() != n {
                return Err(Error::Malformed(format!("differential entry ({i},{j}) out of range")));
            }
            let slot = &mut entries[i * t + j];
            for (k, &c) in m.iter().enumerate() {
                slot[k] = f.add(slot[k], c);
            }
        }
        let l = SemifreeModule { algebra, labels, degrees, entries };
        l.check_degrees()?;
        let x = l.expand();
        if !x.diff().mul(x.diff()).is_zero() {
            return Err(Error::AxiomViolation { axiom: Axiom::Differential, witness: vec![] });
        }
        Ok(l)
    }

    pub(crate) fn from_dense(algebra: Arc<DgAlgebra>, labels: Vec<String>, degrees: Vec<i64>, entries: Vec<Vec<Scalar>>) -> Self {
        SemifreeModule { algebra, labels, degrees, entries }
    }

    /// Free module on the given degrees (zero differential), with labels `e1, e2, ...`.
    pub fn free(algebra: Arc<DgAlgebra>, degrees: &[i64]) -> Self {
        let t = degrees.len();
        let n = algebra.dim();
        SemifreeModule {
            algebra,
            labels: (1..=t).map(|j| format!("e{j}")).collect(),
            degrees: degrees.to_vec(),
            entries: vec![vec![0; n]; t * t],
        }
    }

    fn check_degrees(&self) -> Result<()> {
        let t = self.len();
        for i in 0..t {
            for j in 0..t {
                let want = self.degrees[j] - self.degrees[i] - 1;
                let bad = self.entries[i * t + j]
                    .iter()
                    .enumerate()
                    .any(|(k, &c)| c != 0 && self.algebra.degree(k) as i64 != want);
                if bad {
                    return Err(Error::DegreeMismatch { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.algebra
    }

    /// Size of the semibasis.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, j: usize) -> i64 {
        self.degrees[j]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.len() + j]
    }

    /// Indices of semibasis elements in `degree`.
    pub fn indices_in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.degrees[j] == degree).collect()
    }

    /// The k-basis expansion `{b_a e_j}` with basis index `j * dim A + a`.
    /// `∂(b_a e_j) = ∂b_a e_j + (-1)^{|b_a|} Σ_i (b_a m_ij) e_i`.
    pub fn expand(&self) -> DgModule {
        let a = &*self.algebra;
        let f = a.field();
        let n = a.dim();
        let t = self.len();
        let dim = t * n;
        let degrees: Vec<i64> = (0..t).flat_map(|j| (0..n).map(move |b| self.degrees[j] + a.degree(b) as i64)).collect();
        let mut diff = Matrix::zeros(f, dim, dim);
        for j in 0..t {
            for b in 0..n {
                let col = j * n + b;
                for k in 0..n {
                    let c = a.diff().get(k, b);
                    if c != 0 {
                        diff.add_at(j * n + k, col, c);
                    }
                }
                let sign = f.sign(a.degree(b) % 2 == 1);
                let unit_b = crate::dgalgebra::unit_vec(f, n, b);
                for i in 0..t {
                    let m = self.entry(i, j);
                    if m.iter().all(|&c| c == 0) {
                        continue;
                    }
                    for (k, &c) in a.mul(&unit_b, m).iter().enumerate() {
                        if c != 0 {
                            diff.add_at(i * n + k, col, f.mul(sign, c));
                        }
                    }
                }
            }
        }
        let actions = (0..n)
            .map(|c| {
                let mut x = Matrix::zeros(f, dim, dim);
                for j in 0..t {
                    for b in 0..n {
                        for (k, &v) in a.product(c, b).iter().enumerate() {
                            if v != 0 {
                                x.set(j * n + k, j * n + b, v);
                            }
                        }
                    }
                }
                x
            })
            .collect();
        DgModule::from_parts(self.algebra.clone(), degrees, diff, actions).expect("shapes agree by construction")
    }

    pub fn homology_profile(&self) -> HomologyProfile {
        self.expand().homology_profile()
    }

    /// `F^(p)`: the sub-DG-module on semibasis elements of degree `<= p`.
    pub fn filtration(&self, p: i64) -> SemifreeModule {
        let keep: Vec<usize> = (0..self.len()).filter(|&j| self.degrees[j] <= p).collect();
        self.select(&keep)
    }

    /// Restriction to a set of semibasis elements closed under `∂`.
    pub(crate) fn select(&self, keep: &[usize]) -> SemifreeModule {
        let t = self.len();
        for &j in keep {
            for i in 0..t {
                debug_assert!(keep.contains(&i) || self.entry(i, j).iter().all(|&c| c == 0), "selection not closed under ∂");
            }
        }
        let entries = keep.iter().flat_map(|&i| keep.iter().map(move |&j| self.entry(i, j).to_vec())).collect();
        SemifreeModule {
            algebra: self.algebra.clone(),
            labels: keep.iter().map(|&j| self.labels[j].clone()).collect(),
            degrees: keep.iter().map(|&j| self.degrees[j]).collect(),
            entries,
        }
    }

    /// `Σ^q L`: `∂(σe_j) = Σ_i (-1)^{q(1 + |m_ij|)} m_ij σe_i`.
    pub fn shift(&self, q: i64) -> SemifreeModule {
        let f = self.algebra.field();
        let t = self.len();
        let mut entries = self.entries.clone();
        for i in 0..t {
            for j in 0..t {
                let deg = self.degrees[j] - self.degrees[i] - 1;
                let odd = (q * (1 + deg)).rem_euclid(2) == 1;
                for c in entries[i * t + j].iter_mut() {
                    *c = f.mul(*c, f.sign(odd));
                }
            }
        }
        SemifreeModule {
            algebra: self.algebra.clone(),
            labels: self.labels.clone(),
            degrees: self.degrees.iter().map(|d| d + q).collect(),
            entries,
        }
    }

    /// `A' ⊗_A L` along the truncation `A -> A'`.
    pub fn base_change(&self, t: &TruncatedAlgebra) -> Result<SemifreeModule> {
        if t.projection.cols() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let entries = self.entries.iter().map(|m| t.projection.mul_vec(m)).collect();
        Ok(SemifreeModule {
            algebra: Arc::new(t.algebra.clone()),
            labels: self.labels.clone(),
            degrees: self.degrees.clone(),
            entries,
        })
    }

    /// No entry has a nonzero unit coefficient, i.e. `∂L ⊆ A_+ L`.
    pub fn is_minimal(&self) -> bool {
        let u = self.algebra.unit();
        self.entries.iter().all(|m| m[u] == 0)
    }

    /// A semibasis in a single degree `n` forces `∂ = 0`, so
    /// `L ≅ Σ^n A^b` and `H(L)` is `H(A)^b` shifted by `n`.
    pub fn free_single_degree_check(&self) -> Result<SingleDegreeReport> {
        let Some(&n) = self.degrees.first() else {
            return Err(Error::ZeroModule);
        };
        if self.degrees.iter().any(|&d| d != n) {
            return Err(Error::NotSingleDegree);
        }
        let diff_zero = self.entries.iter().all(|m| m.iter().all(|&c| c == 0));
        let h_a = self.algebra.homology_profile();
        let s = h_a.amp().unwrap_or(0);
        let profile = self.homology_profile();
        let expected = h_a.scaled(self.len()).shifted(n);
        let holds = diff_zero
            && profile == expected
            && profile.inf() == Some(n)
            && profile.sup() == Some(s + n)
            && profile.amp() == Some(s);
        Ok(SingleDegreeReport { degree: n, rank: self.len(), s, profile, diff_zero, holds })
    }

    /// With semibasis degrees in `[n, n + m]`:
    /// `inf H(L) >= n`, `sup H(L) <= s + n + m`, `amp H(L) <= s + m`.
    pub fn semibasis_bounds(&self) -> BoundsReport {
        let s = self.algebra.homology_profile().amp().unwrap_or(0);
        let (n, m) = self.span();
        let profile = self.homology_profile();
        BoundsReport::new(profile, n, s + n + m, s + m)
    }

    fn span(&self) -> (i64, i64) {
        let lo = self.degrees.iter().copied().min().unwrap_or(0);
        let hi = self.degrees.iter().copied().max().unwrap_or(0);
        (lo, hi - lo)
    }
}

/// `L ⊗_A Y` for semifree `L`: basis `e_j ⊗ y` with index `j * dim Y + y`.
///
/// `∂(e_j ⊗ y) = Σ_i (-1)^{|m_ij| d_i} e_i ⊗ m_ij y + (-1)^{d_j} e_j ⊗ ∂y` and
/// `a (e_j ⊗ y) = (-1)^{|a| d_j} e_j ⊗ a y`.
pub fn tensor_over_a(l: &SemifreeModule, y: &DgModule) -> Result<DgModule> {
    if l.algebra != *y.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let a = &*l.algebra;
    let f = a.field();
    let t = l.len();
    let ny = y.dim();
    let dim = t * ny;
    let degrees: Vec<i64> = (0..t).flat_map(|j| y.degrees().iter().map(move |&dy| l.degrees[j] + dy)).collect();
    let mut diff = Matrix::zeros(f, dim, dim);
    for j in 0..t {
        let dj_sign = f.sign(l.degrees[j].rem_euclid(2) == 1);
        for r in 0..ny {
            for c in 0..ny {
                let v = y.diff().get(r, c);
                if v != 0 {
                    diff.add_at(j * ny + r, j * ny + c, f.mul(dj_sign, v));
                }
            }
        }
        for i in 0..t {
            let m = l.entry(i, j);
            if m.iter().all(|&c| c == 0) {
                continue;
            }
            let deg = l.degrees[j] - l.degrees[i] - 1;
            let sign = f.sign((deg * l.degrees[i]).rem_euclid(2) == 1);
            let act = y.element_action(m);
            for r in 0..ny {
                for c in 0..ny {
                    let v = act.get(r, c);
                    if v != 0 {
                        diff.add_at(i * ny + r, j * ny + c, f.mul(sign, v));
                    }
                }
            }
        }
    }
    let actions = (0..a.dim())
        .map(|b| {
            let mut x = Matrix::zeros(f, dim, dim);
            for j in 0..t {
                let sign = f.sign((a.degree(b) as i64 * l.degrees[j]).rem_euclid(2) == 1);
                let act = y.action(b);
                for r in 0..ny {
                    for c in 0..ny {
                        let v = act.get(r, c);
                        if v != 0 {
                            x.set(j * ny + r, j * ny + c, f.mul(sign, v));
                        }
                    }
                }
            }
            x
        })
        .collect();
    DgModule::from_parts(l.algebra.clone(), degrees, diff, actions)
}

/// Bounds for `L ⊗_A Y` with semibasis degrees in `[n, n + m]`:
/// `inf >= inf H(Y) + n`, `sup <= sup H(Y) + n + m`, `amp <= amp H(Y) + m`.
/// For `m = 0` the profile must equal `H(Y)^b` shifted by `n`.
pub fn tensor_bounds(l: &SemifreeModule, y: &DgModule) -> Result<BoundsReport> {
    let (n, m) = l.span();
    let hy = y.homology_profile();
    let product = tensor_over_a(l, y)?;
    let profile = product.homology_profile();
    let (Some(iy), Some(sy), Some(ay)) = (hy.inf(), hy.sup(), hy.amp()) else {
        let mut r = BoundsReport::new(profile.clone(), 0, 0, 0);
        r.holds = profile.is_zero();
        return Ok(r);
    };
    let mut report = BoundsReport::new(profile, iy + n, sy + n + m, ay + m);
    if m == 0 && !l.is_empty() {
        let expected = hy.scaled(l.len()).shifted(n);
        report.exact = Some(report.profile == expected);
        report.holds &= report.exact == Some(true);
    }
    Ok(report)
}

/// Outcome of a single-degree freeness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleDegreeReport {
    pub degree: i64,
    pub rank: usize,
    pub s: i64,
    pub profile: HomologyProfile,
    pub diff_zero: bool,
    pub holds: bool,
}

/// `inf >= inf_min`, `sup <= sup_max`, `amp <= amp_max` for a homology profile;
/// the zero profile satisfies every bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub profile: HomologyProfile,
    pub inf_min: i64,
    pub sup_max: i64,
    pub amp_max: i64,
    /// Exact profile equality, when the statement predicts one.
    pub exact: Option<bool>,
    pub holds: bool,
}

impl BoundsReport {
    pub fn new(profile: HomologyProfile, inf_min: i64, sup_max: i64, amp_max: i64) -> Self {
        let holds = profile.inf().is_none_or(|i| i >= inf_min)
            && profile.sup().is_none_or(|s| s <= sup_max)
            && profile.amp().is_none_or(|a| a <= amp_max);
        BoundsReport { profile, inf_min, sup_max, amp_max, exact: None, holds }
    }
}
