//! Strict JSON documents for rings, modules, DG algebras and DG modules.
//!
//! Every document may carry `"schema": "torind/1"`; any other value, and any
//! unknown field, is rejected. Coefficients are signed integers reduced mod `p`.
//!
//! Ring elements are lists of `[coefficient, [exponents]]` terms. Algebra
//! elements are lists of `[basis index, coefficient]` terms.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dgalgebra::{validate_dg_algebra, DgAlgebra, RawDgAlgebra};
use crate::dgmod::{DgModule, SemifreeModule};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Scalar};
use crate::ringkit::{make_ring, FgModule, Monomial, MonomialRing};

pub const SCHEMA_VERSION: &str = "torind/1";

pub type RingElementDoc = Vec<(i64, Vec<u32>)>;
pub type AlgebraElementDoc = Vec<(usize, i64)>;

fn check_version(schema: &Option<String>) -> Result<()> {
    match schema {
        Some(s) if s != SCHEMA_VERSION => Err(Error::Malformed(format!("unsupported schema {s:?}, expected {SCHEMA_VERSION:?}"))),
        _ => Ok(()),
    }
}

/// Parses a document, reporting serde errors with their line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

/// The field named by a document, falling back to `fallback`. A document
/// value that disagrees with an explicitly requested field is an error.
pub fn field_for(doc_p: Option<u32>, requested: Option<u32>) -> Result<PrimeField> {
    match (doc_p, requested) {
        (Some(a), Some(b)) if a != b => Err(Error::Malformed(format!("document has p = {a} but p = {b} was requested"))),
        (Some(p), _) | (None, Some(p)) => PrimeField::new(p),
        (None, None) => Ok(PrimeField::default()),
    }
}

fn matrix(field: PrimeField, rows: &[Vec<i64>], n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed(format!("{what} must be a {n}x{n} matrix")));
    }
    Ok(Matrix::from_rows(field, rows))
}

fn to_rows(m: &Matrix, field: PrimeField) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| field.to_signed(m.get(i, j))).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub vars: usize,
    pub gens: Vec<Vec<u32>>,
}

impl RingDoc {
    pub fn build(&self, requested_p: Option<u32>) -> Result<MonomialRing> {
        check_version(&self.schema)?;
        let field = field_for(self.p, requested_p)?;
        if let Some(g) = self.gens.iter().find(|g| g.len() != self.vars) {
            return Err(Error::Malformed(format!("generator {g:?} does not have {} exponents", self.vars)));
        }
        let gens: Vec<Monomial> = self.gens.iter().map(|g| Monomial(g.clone())).collect();
        make_ring(field, self.vars, &gens)
    }

    pub fn from_ring(ring: &MonomialRing) -> Self {
        RingDoc {
            schema: Some(SCHEMA_VERSION.into()),
            p: Some(ring.field().characteristic()),
            vars: ring.nvars(),
            gens: ring.gens().iter().map(|g| g.0.clone()).collect(),
        }
    }
}

/// A finitely generated module over an artinian monomial ring. Over a ring
/// with free variables the document describes `N_0` over the core ring (the
/// free variables deleted, remaining variables in their original order) and
/// stands for `R ⊗ N_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDoc {
    /// One `dim x dim` matrix per variable.
    Actions { dim: usize, actions: Vec<Vec<Vec<i64>>> },
    /// Cokernel of `R^relations -> R^generators`; each relation lists one
    /// ring element per generator.
    Presentation { generators: usize, relations: Vec<Vec<RingElementDoc>> },
    /// `R / J` for the monomial ideal `J`.
    Cyclic { ideal: Vec<Vec<u32>> },
    ResidueField,
    Free { rank: usize },
}

impl ModuleDoc {
    pub fn build(&self, ring: &Arc<MonomialRing>) -> Result<FgModule> {
        let f = ring.field();
        let check = |e: &[u32]| {
            if e.len() == ring.nvars() {
                Ok(Monomial(e.to_vec()))
            } else {
                Err(Error::Malformed(format!("exponent vector {e:?} does not have {} entries", ring.nvars())))
            }
        };
        match self {
            ModuleDoc::Actions { dim, actions } => {
                if actions.len() != ring.nvars() {
                    return Err(Error::Malformed(format!("{} action matrices for {} variables", actions.len(), ring.nvars())));
                }
                let mats = actions.iter().map(|a| matrix(f, a, *dim, "action")).collect::<Result<Vec<_>>>()?;
                FgModule::from_actions(ring.clone(), *dim, mats)
            }
            ModuleDoc::Presentation { generators, relations } => {
                let mut cols = Vec::with_capacity(relations.len());
                for rel in relations {
                    if rel.len() != *generators {
                        return Err(Error::Malformed(format!("relation has {} entries for {generators} generators", rel.len())));
                    }
                    let col = rel
                        .iter()
                        .map(|el| {
                            let terms = el.iter().map(|(c, e)| check(e).map(|m| (*c, m))).collect::<Result<Vec<_>>>()?;
                            ring.element(&terms)
                        })
                        .collect::<Result<Vec<Vec<Scalar>>>>()?;
                    cols.push(col);
                }
                FgModule::from_presentation(ring.clone(), *generators, &cols)
            }
            ModuleDoc::Cyclic { ideal } => {
                let gens = ideal.iter().map(|e| check(e)).collect::<Result<Vec<_>>>()?;
                FgModule::cyclic(ring.clone(), &gens)
            }
            ModuleDoc::ResidueField => FgModule::residue_field(ring.clone()),
            ModuleDoc::Free { rank } => FgModule::free(ring.clone(), *rank),
        }
    }

    pub fn from_module(m: &FgModule) -> Self {
        let f = m.field();
        ModuleDoc::Actions { dim: m.dim(), actions: m.actions().iter().map(|a| to_rows(a, f)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleListDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub modules: Vec<ModuleDoc>,
}

/// Either a single module document or `{"modules": [...]}`.
pub fn parse_modules(text: &str) -> Result<Vec<ModuleDoc>> {
    let value: serde_json::Value = parse(text)?;
    if value.get("modules").is_some() {
        let list: ModuleListDoc = parse(text)?;
        check_version(&list.schema)?;
        Ok(list.modules)
    } else {
        Ok(vec![parse(text)?])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElementDoc {
    pub label: String,
    pub degree: i64,
}

/// Omitted products and differentials are zero, except that products with
/// the unit that are not listed at all default to `1 * b = b * 1 = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgAlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub basis: Vec<BasisElementDoc>,
    pub unit: usize,
    #[serde(default)]
    pub mult: Vec<(usize, usize, Vec<(usize, i64)>)>,
    #[serde(default)]
    pub diff: Vec<(usize, Vec<(usize, i64)>)>,
}

impl DgAlgebraDoc {
    pub fn build(&self, requested_p: Option<u32>) -> Result<DgAlgebra> {
        check_version(&self.schema)?;
        let field = field_for(self.p, requested_p)?;
        let basis = self
            .basis
            .iter()
            .map(|b| {
                usize::try_from(b.degree)
                    .map(|d| (b.label.clone(), d))
                    .map_err(|_| Error::Malformed(format!("basis element {} has negative degree", b.label)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut mult = self.mult.clone();
        for j in 0..basis.len() {
            for (a, b) in [(self.unit, j), (j, self.unit)] {
                if !mult.iter().any(|(x, y, _)| (*x, *y) == (a, b)) {
                    mult.push((a, b, vec![(j, 1)]));
                }
            }
        }
        validate_dg_algebra(&RawDgAlgebra { field, basis, unit: self.unit, mult, diff: self.diff.clone() })
    }

    pub fn from_algebra(a: &DgAlgebra) -> Self {
        let raw = a.to_raw();
        DgAlgebraDoc {
            schema: Some(SCHEMA_VERSION.into()),
            p: Some(raw.field.characteristic()),
            basis: raw.basis.into_iter().map(|(label, d)| BasisElementDoc { label, degree: d as i64 }).collect(),
            unit: raw.unit,
            mult: raw.mult,
            diff: raw.diff,
        }
    }
}

/// A DG module over an algebra supplied separately. `algebra_ref` is an
/// informational path and is not resolved by the library.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DgModuleDoc {
    /// Explicit basis. `diff` lists `(j, [(i, c)])` for `∂x_j = Σ c x_i`;
    /// `actions` lists `(b, [(j, [(i, c)])])` for `b · x_j = Σ c x_i`. The unit
    /// acts as the identity unless listed.
    Finite {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        algebra_ref: Option<String>,
        basis: Vec<BasisElementDoc>,
        #[serde(default)]
        diff: Vec<(usize, Vec<(usize, i64)>)>,
        #[serde(default)]
        actions: Vec<(usize, Vec<(usize, Vec<(usize, i64)>)>)>,
    },
    /// `diff` lists `(j, [(i, m_ij)])` with `∂e_j = Σ m_ij e_i`.
    Semifree {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        algebra_ref: Option<String>,
        semibasis: Vec<BasisElementDoc>,
        #[serde(default)]
        diff: Vec<(usize, Vec<(usize, AlgebraElementDoc)>)>,
    },
    ResidueField {
        #[serde(default)]
        shift: i64,
    },
    Algebra {
        #[serde(default)]
        shift: i64,
    },
}

fn algebra_element(a: &DgAlgebra, terms: &[(usize, i64)]) -> Result<Vec<Scalar>> {
    let f = a.field();
    let mut v = vec![0; a.dim()];
    for &(i, c) in terms {
        if i >= a.dim() {
            return Err(Error::Malformed(format!("algebra basis index {i} out of range")));
        }
        v[i] = f.add(v[i], f.from_i64(c));
    }
    Ok(v)
}

impl DgModuleDoc {
    pub fn build(&self, algebra: &Arc<DgAlgebra>) -> Result<DgModule> {
        let f = algebra.field();
        match self {
            DgModuleDoc::Finite { basis, diff, actions, .. } => {
                let n = basis.len();
                let sparse = |m: &mut Matrix, cols: &[(usize, Vec<(usize, i64)>)]| -> Result<()> {
                    for (j, terms) in cols {
                        for &(i, c) in terms {
                            if *j >= n || i >= n {
                                return Err(Error::Malformed(format!("module entry {j}->{i} out of range")));
                            }
                            m.add_at(i, *j, f.from_i64(c));
                        }
                    }
                    Ok(())
                };
                let mut d = Matrix::zeros(f, n, n);
                sparse(&mut d, diff)?;
                let mut acts: Vec<Matrix> = (0..algebra.dim())
                    .map(|b| if b == algebra.unit() { Matrix::identity(f, n) } else { Matrix::zeros(f, n, n) })
                    .collect();
                let mut listed = vec![false; algebra.dim()];
                for (b, cols) in actions {
                    if *b >= algebra.dim() {
                        return Err(Error::Malformed(format!("algebra basis index {b} out of range")));
                    }
                    if !listed[*b] {
                        acts[*b] = Matrix::zeros(f, n, n);
                        listed[*b] = true;
                    }
                    sparse(&mut acts[*b], cols)?;
                }
                DgModule::new(algebra.clone(), basis.iter().map(|b| b.degree).collect(), d, acts)
            }
            DgModuleDoc::Semifree { semibasis, diff, .. } => {
                let t = semibasis.len();
                let mut sparse = Vec::new();
                for (j, terms) in diff {
                    for (i, el) in terms {
                        if *j >= t || *i >= t {
                            return Err(Error::Malformed(format!("semibasis entry {j}->{i} out of range")));
                        }
                        sparse.push((*i, *j, algebra_element(algebra, el)?));
                    }
                }
                let l = SemifreeModule::new(
                    algebra.clone(),
                    semibasis.iter().map(|b| b.label.clone()).collect(),
                    semibasis.iter().map(|b| b.degree).collect(),
                    &sparse,
                )?;
                Ok(l.expand())
            }
            DgModuleDoc::ResidueField { shift } => Ok(DgModule::residue_field(algebra.clone()).shift(*shift)),
            DgModuleDoc::Algebra { shift } => Ok(DgModule::from_algebra(algebra.clone()).shift(*shift)),
        }
    }

    pub fn from_module(m: &DgModule) -> Self {
        let f = m.field();
        let sparse = |x: &Matrix| -> Vec<(usize, Vec<(usize, i64)>)> {
            (0..x.cols())
                .filter_map(|j| {
                    let terms: Vec<(usize, i64)> =
                        (0..x.rows()).filter(|&i| x.get(i, j) != 0).map(|i| (i, f.to_signed(x.get(i, j)))).collect();
                    (!terms.is_empty()).then_some((j, terms))
                })
                .collect()
        };
        let unit = m.algebra().unit();
        DgModuleDoc::Finite {
            algebra_ref: None,
            basis: m.degrees().iter().enumerate().map(|(i, &d)| BasisElementDoc { label: format!("x{i}"), degree: d }).collect(),
            diff: sparse(m.diff()),
            actions: m
                .actions()
                .iter()
                .enumerate()
                .filter(|(b, _)| *b != unit)
                .map(|(b, x)| (b, sparse(x)))
                .filter(|(_, cols)| !cols.is_empty())
                .collect(),
        }
    }

    pub fn from_semifree(l: &SemifreeModule) -> Self {
        let f = l.algebra().field();
        let t = l.len();
        let diff = (0..t)
            .filter_map(|j| {
                let terms: Vec<(usize, AlgebraElementDoc)> = (0..t)
                    .filter_map(|i| {
                        let el: AlgebraElementDoc =
                            l.entry(i, j).iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, f.to_signed(c))).collect();
                        (!el.is_empty()).then_some((i, el))
                    })
                    .collect();
                (!terms.is_empty()).then_some((j, terms))
            })
            .collect();
        DgModuleDoc::Semifree {
            algebra_ref: None,
            semibasis: l.labels().iter().zip(l.degrees()).map(|(label, &degree)| BasisElementDoc { label: label.clone(), degree }).collect(),
            diff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgModuleListDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_ref: Option<String>,
    pub modules: Vec<DgModuleDoc>,
}

/// Either a single DG module document or `{"modules": [...]}`.
pub fn parse_dg_modules(text: &str) -> Result<Vec<DgModuleDoc>> {
    let value: serde_json::Value = parse(text)?;
    if value.get("modules").is_some() {
        let list: DgModuleListDoc = parse(text)?;
        check_version(&list.schema)?;
        Ok(list.modules)
    } else {
        Ok(vec![parse(text)?])
    }
}
