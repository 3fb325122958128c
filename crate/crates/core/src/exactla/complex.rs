use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::Matrix;
use super::subspace::{Subquotient, Subspace};

/// Per-degree homology dimensions with the derived `inf`, `sup` and `amp`.
///
/// The zero profile has no `inf`/`sup`/`amp`; these are `None` rather than
/// sentinel integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    dims: BTreeMap<i64, usize>,
}

impl HomologyProfile {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_dims(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (d, n) in dims {
            if n > 0 {
                *map.entry(d).or_insert(0) += n;
            }
        }
        HomologyProfile { dims: map }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn inf(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn sup(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn amp(&self) -> Option<i64> {
        Some(self.sup()? - self.inf()?)
    }

    pub fn shifted(&self, q: i64) -> Self {
        HomologyProfile { dims: self.dims.iter().map(|(&d, &n)| (d + q, n)).collect() }
    }

    pub fn scaled(&self, k: usize) -> Self {
        HomologyProfile::from_dims(self.dims.iter().map(|(&d, &n)| (d, n * k)))
    }

    /// Only the degrees strictly below `bound`.
    pub fn below(&self, bound: i64) -> Self {
        HomologyProfile { dims: self.dims.range(..bound).map(|(&d, &n)| (d, n)).collect() }
    }

    /// Dense list of dims from `from` to `to` inclusive.
    pub fn dense(&self, from: i64, to: i64) -> Vec<usize> {
        (from..=to).map(|d| self.dim(d)).collect()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.inf(), self.sup()) {
            (Some(lo), Some(hi)) => {
                let dims: Vec<String> = (lo..=hi).map(|d| self.dim(d).to_string()).collect();
                write!(f, "dims[{lo}..{hi}] = ({}), amp {}", dims.join(","), hi - lo)
            }
            _ => f.write_str("zero"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    dims: Vec<(i64, usize)>,
    zero: bool,
    inf: Option<i64>,
    sup: Option<i64>,
    amp: Option<i64>,
}

impl Serialize for HomologyProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProfileRepr {
            dims: self.dims.iter().map(|(&d, &n)| (d, n)).collect(),
            zero: self.is_zero(),
            inf: self.inf(),
            sup: self.sup(),
            amp: self.amp(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomologyProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(d)?;
        Ok(HomologyProfile::from_dims(repr.dims))
    }
}

/// A bounded chain complex of finite-dimensional spaces, stored degreewise.
/// `diffs[i]` maps degree `i` to degree `i - 1`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    field: PrimeField,
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    pub fn new(field: PrimeField) -> Self {
        ChainComplex { field, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn set_dim(&mut self, degree: i64, dim: usize) {
        self.dims.insert(degree, dim);
    }

    /// Sets the differential out of `degree`.
    pub fn set_diff(&mut self, degree: i64, m: Matrix) {
        assert_eq!(m.cols(), self.dim(degree), "source dim mismatch at {degree}");
        assert_eq!(m.rows(), self.dim(degree - 1), "target dim mismatch at {degree}");
        self.diffs.insert(degree, m);
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.iter().filter(|(_, &n)| n > 0).map(|(&d, _)| d)
    }

    pub fn diff(&self, degree: i64) -> Matrix {
        self.diffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(degree - 1), self.dim(degree)))
    }

    fn diff_rank(&self, degree: i64) -> usize {
        self.diffs.get(&degree).map_or(0, Matrix::rank)
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.keys().all(|&d| self.diff(d - 1).mul(&self.diff(d)).is_zero())
    }

    pub fn homology_dim(&self, degree: i64) -> usize {
        self.dim(degree) - self.diff_rank(degree) - self.diff_rank(degree + 1)
    }

    pub fn homology(&self) -> HomologyProfile {
        HomologyProfile::from_dims(self.degrees().map(|d| (d, self.homology_dim(d))))
    }

    /// Homology in `degree` with chosen cycle representatives.
    pub fn homology_at(&self, degree: i64) -> Subquotient {
        let z = self.diff(degree).kernel_basis();
        let b = Subspace::span(&self.diff(degree + 1));
        Subquotient::new(z, b)
    }

    /// Amplitude of the complex itself (not its homology).
    pub fn amp(&self) -> Option<i64> {
        let lo = self.degrees().next()?;
        let hi = self.degrees().last()?;
        Some(hi - lo)
    }
}
