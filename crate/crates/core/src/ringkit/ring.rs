use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Scalar};

/// Exponent vector of a monomial in `k[x_1..x_m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, a: usize) -> Self {
        let mut e = vec![0; nvars];
        e[a] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    /// The variable index if this is a pure power `x_a^e`, `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (a, _) = support.next()?;
        support.next().is_none().then_some(a)
    }

    pub fn without(&self, a: usize) -> Monomial {
        let mut e = self.0.clone();
        e.remove(a);
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| -> String {
            const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
            if self.0.len() <= NAMES.len() {
                NAMES[i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names(i) } else { format!("{}^{e}", names(i)) })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(""))
        }
    }
}

/// `k[x_1..x_m] / I` with `I` a monomial ideal.
///
/// Generators are kept minimal. When the ring is artinian (each variable has
/// a pure power in `I`) the standard monomials form a finite k-basis, ordered
/// by degree and then with larger exponent vectors first.
#[derive(Clone, Debug)]
pub struct MonomialRing {
    field: PrimeField,
    nvars: usize,
    gens: Vec<Monomial>,
    basis: Option<Vec<Monomial>>,
    index: HashMap<Monomial, usize>,
}

impl PartialEq for MonomialRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.gens == other.gens
    }
}

impl Eq for MonomialRing {}

/// Validates and minimalizes the generators; enumerates the k-basis when artinian.
pub fn make_ring(field: PrimeField, nvars: usize, gens: &[Monomial]) -> Result<MonomialRing> {
    for g in gens {
        if g.0.len() != nvars {
            return Err(Error::Malformed(format!("generator {:?} has {} exponents, expected {nvars}", g.0, g.0.len())));
        }
        match g.degree() {
            0 => return Err(Error::Malformed("the unit ideal gives the zero ring".into())),
            1 => {
                return Err(Error::Malformed(format!(
                    "linear generator {g}: drop the variable instead so that m_R is minimally generated by the variables"
                )))
            }
            _ => {}
        }
    }
    let set: BTreeSet<Monomial> = gens.iter().cloned().collect();
    let mut minimal: Vec<Monomial> = set
        .iter()
        .filter(|g| !set.iter().any(|h| h != *g && h.divides(g)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));

    let mut ring = MonomialRing { field, nvars, gens: minimal, basis: None, index: HashMap::new() };
    let artinian = (0..nvars).all(|a| ring.gens.iter().any(|g| g.pure_power_var() == Some(a)));
    if artinian {
        let mut seen = BTreeSet::new();
        let mut frontier = vec![Monomial::one(nvars)];
        while let Some(m) = frontier.pop() {
            if ring.in_ideal(&m) || !seen.insert(m.clone()) {
                continue;
            }
            for a in 0..nvars {
                frontier.push(m.mul(&Monomial::var(nvars, a)));
            }
        }
        let mut basis: Vec<Monomial> = seen.into_iter().collect();
        basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
        ring.index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        ring.basis = Some(basis);
    }
    Ok(ring)
}

impl MonomialRing {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_artinian(&self) -> bool {
        self.basis.is_some()
    }

    pub fn in_ideal(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// k-dimension; `NonArtinian` otherwise.
    pub fn dim(&self) -> Result<usize> {
        self.basis.as_ref().map(Vec::len).ok_or(Error::NonArtinian)
    }

    pub fn basis(&self) -> Result<&[Monomial]> {
        self.basis.as_deref().ok_or(Error::NonArtinian)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Matrix of multiplication by `x_a` on the k-basis.
    pub fn var_action(&self, a: usize) -> Result<Matrix> {
        self.monomial_action(&Monomial::var(self.nvars, a))
    }

    /// Matrix of multiplication by a monomial on the k-basis.
    pub fn monomial_action(&self, u: &Monomial) -> Result<Matrix> {
        let basis = self.basis()?;
        let mut m = Matrix::zeros(self.field, basis.len(), basis.len());
        for (j, b) in basis.iter().enumerate() {
            if let Some(i) = self.index_of(&b.mul(u)) {
                m.set(i, j, 1 % self.field.characteristic());
            }
        }
        Ok(m)
    }

    /// Coordinates of a ring element given as `(coefficient, monomial)` terms.
    pub fn element(&self, terms: &[(i64, Monomial)]) -> Result<Vec<Scalar>> {
        let n = self.dim()?;
        let f = self.field;
        let mut v = vec![0; n];
        for (c, m) in terms {
            if m.0.len() != self.nvars {
                return Err(Error::Malformed(format!("monomial {:?} has the wrong length", m.0)));
            }
            if let Some(i) = self.index_of(m) {
                v[i] = f.add(v[i], f.from_i64(*c));
            }
        }
        Ok(v)
    }

    pub fn element_to_string(&self, v: &[Scalar]) -> String {
        let Ok(basis) = self.basis() else {
            return "?".into();
        };
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let c = self.field.to_signed(c);
                match (c, basis[i].degree()) {
                    (1, d) if d > 0 => basis[i].to_string(),
                    (-1, d) if d > 0 => format!("-{}", basis[i]),
                    (_, 0) => c.to_string(),
                    _ => format!("{c}{}", basis[i]),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }

    /// Variables occurring in no generator; these are regular on `R`.
    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&a| self.gens.iter().all(|g| g.0[a] == 0)).collect()
    }

    pub fn core_vars(&self) -> Vec<usize> {
        let free = self.free_vars();
        (0..self.nvars).filter(|a| !free.contains(a)).collect()
    }

    /// `R/x_v R`: the same generators in the remaining variables.
    /// Only meaningful when `x_v` is free.
    pub fn drop_var(&self, v: usize) -> Result<MonomialRing> {
        if v >= self.nvars {
            return Err(Error::Malformed(format!("no variable {v}")));
        }
        let gens: Vec<Monomial> = self.gens.iter().filter(|g| g.0[v] == 0).map(|g| g.without(v)).collect();
        make_ring(self.field, self.nvars - 1, &gens)
    }

    /// The ring on the non-free variables, so that `R = core[free vars]`.
    pub fn core_ring(&self) -> Result<MonomialRing> {
        let mut ring = self.clone();
        for v in self.free_vars().into_iter().rev() {
            ring = ring.drop_var(v)?;
        }
        Ok(ring)
    }

    pub fn lcm_of_gens(&self) -> Monomial {
        self.gens.iter().fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Whether `m_R^n != 0`.
    pub fn max_ideal_power_nonzero(&self, n: usize) -> bool {
        match &self.basis {
            Some(basis) => basis.iter().any(|b| b.degree() as usize >= n),
            None => true,
        }
    }

    pub fn describe(&self) -> String {
        let vars: Vec<String> = (0..self.nvars).map(|a| Monomial::var(self.nvars, a).to_string()).collect();
        let gens: Vec<String> = self.gens.iter().map(Monomial::to_string).collect();
        if gens.is_empty() {
            format!("k[{}]", vars.join(","))
        } else {
            format!("k[{}]/({})", vars.join(","), gens.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn dual_numbers() {
        let r = make_ring(field(), 1, &[mono(&[2])]).unwrap();
        assert!(r.is_artinian());
        assert_eq!(r.dim().unwrap(), 2);
        assert_eq!(r.basis().unwrap(), &[mono(&[0]), mono(&[1])]);
    }

    #[test]
    fn two_variable_complete_intersection() {
        let r = make_ring(field(), 2, &[mono(&[2, 0]), mono(&[0, 2])]).unwrap();
        assert_eq!(r.dim().unwrap(), 4);
        let names: Vec<String> = r.basis().unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "x", "y", "xy"]);
        assert_eq!(r.describe(), "k[x,y]/(x^2,y^2)");
    }

    #[test]
    fn non_artinian_and_free_vars() {
        let r = make_ring(field(), 3, &[mono(&[0, 2, 0]), mono(&[0, 0, 2])]).unwrap();
        assert!(!r.is_artinian());
        assert_eq!(r.dim(), Err(Error::NonArtinian));
        assert_eq!(r.free_vars(), vec![0]);
        let core = r.core_ring().unwrap();
        assert!(core.is_artinian());
        assert_eq!(core.dim().unwrap(), 4);
    }

    #[test]
    fn generators_are_minimalized() {
        let r = make_ring(field(), 2, &[mono(&[2, 0]), mono(&[3, 1]), mono(&[0, 2]), mono(&[2, 0])]).unwrap();
        assert_eq!(r.gens().len(), 2);
        assert!(make_ring(field(), 2, &[mono(&[1, 0])]).is_err());
        assert!(make_ring(field(), 2, &[mono(&[1])]).is_err());
    }

    #[test]
    fn max_ideal_powers() {
        let r = make_ring(field(), 2, &[mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]).unwrap();
        assert!(r.max_ideal_power_nonzero(1));
        assert!(!r.max_ideal_power_nonzero(2));
    }
}
