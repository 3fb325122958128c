use serde::Serialize;

use super::module::FgModule;
use super::ring::{Monomial, MonomialRing};
use crate::error::Result;
use crate::exactla::{ChainComplex, HomologyProfile, Matrix};

/// Size-`i` subsets of `0..m` in lexicographic order.
pub fn wedge_basis(m: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..m {
            if m - a < left {
                break;
            }
            cur.push(a);
            rec(a + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, i, &mut Vec::new(), &mut out);
    out
}

/// `K ⊗_R N` for the Koszul complex `K` on the variables.
///
/// `K_i ⊗ N = N^{C(m,i)}` with basis index `s * dim N + v` where `s` runs over
/// [`wedge_basis`]. `∂(e_S ⊗ v) = Σ_p (-1)^p e_{S ∖ S_p} ⊗ x_{S_p} v`.
pub fn koszul_complex_on(module: &FgModule) -> ChainComplex {
    let f = module.field();
    let m = module.ring().nvars();
    let n = module.dim();
    let mut c = ChainComplex::new(f);
    let bases: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| wedge_basis(m, i)).collect();
    for (i, b) in bases.iter().enumerate() {
        c.set_dim(i as i64, b.len() * n);
    }
    for i in 1..=m {
        let lower = &bases[i - 1];
        let mut d = Matrix::zeros(f, lower.len() * n, bases[i].len() * n);
        for (s, subset) in bases[i].iter().enumerate() {
            for (p, &a) in subset.iter().enumerate() {
                let mut rest = subset.clone();
                rest.remove(p);
                let t = lower.binary_search(&rest).expect("lexicographic order");
                let sign = f.sign(p % 2 == 1);
                let x = module.action(a);
                for v in 0..n {
                    for w in 0..n {
                        let e = x.get(w, v);
                        if e != 0 {
                            d.add_at(t * n + w, s * n + v, f.mul(sign, e));
                        }
                    }
                }
            }
        }
        c.set_diff(i as i64, d);
    }
    c
}

/// Koszul homology of `R` on its variables.
///
/// Artinian rings use the finite complex `K ⊗ R`. Otherwise the complex is
/// split into multidegree strands `α`, which are finite. `H(K) = Tor^S(k, R)`
/// over the polynomial ring `S`, and the Taylor resolution of `R` places every
/// nonzero strand at some `α ≤ lcm(generators)` componentwise, so only that box
/// is computed.
pub fn koszul_homology(ring: &MonomialRing) -> Result<HomologyProfile> {
    if ring.is_artinian() {
        let r = FgModule::free(std::sync::Arc::new(ring.clone()), 1)?;
        return Ok(koszul_complex_on(&r).homology());
    }
    Ok(strand_homology(ring))
}

fn strand_homology(ring: &MonomialRing) -> HomologyProfile {
    let f = ring.field();
    let m = ring.nvars();
    let lcm = ring.lcm_of_gens();
    let bases: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| wedge_basis(m, i)).collect();
    let mut totals = vec![0usize; m + 1];
    let mut alpha = vec![0u32; m];
    loop {
        // Strand α: basis e_S ⊗ x^{α - 1_S} for standard monomials.
        let strand: Vec<Vec<(usize, Monomial)>> = bases
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .filter_map(|(s, subset)| {
                        let mut u = alpha.clone();
                        for &a in subset {
                            if u[a] == 0 {
                                return None;
                            }
                            u[a] -= 1;
                        }
                        let u = Monomial(u);
                        (!ring.in_ideal(&u)).then_some((s, u))
                    })
                    .collect()
            })
            .collect();
        let mut c = ChainComplex::new(f);
        for (i, part) in strand.iter().enumerate() {
            c.set_dim(i as i64, part.len());
        }
        for i in 1..=m {
            if strand[i].is_empty() || strand[i - 1].is_empty() {
                continue;
            }
            let mut d = Matrix::zeros(f, strand[i - 1].len(), strand[i].len());
            for (col, (s, u)) in strand[i].iter().enumerate() {
                let subset = &bases[i][*s];
                for (p, &a) in subset.iter().enumerate() {
                    let image = u.mul(&Monomial::var(m, a));
                    if ring.in_ideal(&image) {
                        continue;
                    }
                    let mut rest = subset.clone();
                    rest.remove(p);
                    let t = bases[i - 1].binary_search(&rest).expect("lexicographic order");
                    let row = strand[i - 1].iter().position(|(s2, u2)| *s2 == t && *u2 == image).expect("strand closed under ∂");
                    d.add_at(row, col, f.sign(p % 2 == 1));
                }
            }
            c.set_diff(i as i64, d);
        }
        for (i, total) in totals.iter_mut().enumerate() {
            *total += c.homology_dim(i as i64);
        }
        // Next α in the box [0, lcm].
        let mut a = 0;
        while a < m && alpha[a] == lcm.0[a] {
            alpha[a] = 0;
            a += 1;
        }
        if a == m {
            break;
        }
        alpha[a] += 1;
    }
    HomologyProfile::from_dims(totals.into_iter().enumerate().map(|(i, d)| (i as i64, d)))
}

/// Depth and embedding codepth read off Koszul homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub embedding_dim: usize,
    pub koszul_homology: HomologyProfile,
    pub depth: usize,
    pub ecodepth: usize,
    /// For depth zero: whether `amp H(K) = ecodepth = amp K` holds.
    pub equality_chain: Option<bool>,
}

pub fn depth_and_ecodepth(ring: &MonomialRing) -> Result<DepthReport> {
    let h = koszul_homology(ring)?;
    let m = ring.nvars();
    let top = h.sup().unwrap_or(0) as usize;
    let depth = m - top;
    let equality_chain = (depth == 0).then(|| h.amp() == Some(top as i64) && top == m);
    Ok(DepthReport { embedding_dim: m, koszul_homology: h, depth, ecodepth: top, equality_chain })
}

#[cfg(test)]
mod tests {
    use super::super::ring::make_ring;
    use super::*;
    use crate::exactla::PrimeField;

    fn ring(nvars: usize, gens: &[&[u32]]) -> MonomialRing {
        let f = PrimeField::new(32003).unwrap();
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial(g.to_vec())).collect();
        make_ring(f, nvars, &gens).unwrap()
    }

    #[test]
    fn wedge_order() {
        assert_eq!(wedge_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(wedge_basis(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn koszul_fixtures() {
        assert_eq!(koszul_homology(&ring(1, &[&[2]])).unwrap().dense(0, 1), vec![1, 1]);
        assert_eq!(koszul_homology(&ring(2, &[&[2, 0], &[0, 2]])).unwrap().dense(0, 2), vec![1, 2, 1]);
        let k = ring(0, &[]);
        let h = koszul_homology(&k).unwrap();
        assert_eq!(h.dense(0, 0), vec![1]);
        assert_eq!(h.amp(), Some(0));
    }

    #[test]
    fn depth_fixtures() {
        let r = depth_and_ecodepth(&ring(1, &[&[2]])).unwrap();
        assert_eq!((r.depth, r.ecodepth, r.equality_chain), (0, 1, Some(true)));
        let r = depth_and_ecodepth(&ring(3, &[&[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!((r.depth, r.ecodepth, r.equality_chain), (1, 2, None));
        let r = depth_and_ecodepth(&ring(2, &[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        assert_eq!((r.depth, r.ecodepth), (0, 2));
        assert_eq!(r.koszul_homology.dense(0, 2), vec![1, 3, 2]);
    }

    #[test]
    fn strands_agree_with_finite_complex() {
        // k[x,y]/(x^2, y^3) is artinian, but the strand method must agree.
        let r = ring(2, &[&[2, 0], &[0, 3], &[1, 2]]);
        let direct = koszul_homology(&r).unwrap();
        assert_eq!(strand_homology(&r), direct);
    }

    #[test]
    fn polynomial_ring_is_regular() {
        let r = depth_and_ecodepth(&ring(2, &[])).unwrap();
        assert_eq!((r.depth, r.ecodepth), (2, 0));
        let r = depth_and_ecodepth(&ring(2, &[&[1, 1]])).unwrap();
        assert_eq!((r.depth, r.ecodepth), (1, 1));
    }
}
