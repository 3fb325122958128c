//! A deliberately naive reference implementation used to cross-check the
//! library: dense Gaussian elimination mod p, brute-force monomial bases,
//! Koszul complexes written out directly, minimal resolutions recomputed from
//! scratch with plain span/kernel calls, and DG tensor products built as
//! quotients of `X ⊗_k Y`. Nothing here calls the library's linear algebra.

#![allow(dead_code)]

use std::collections::HashMap;

use torind::dgalgebra::DgAlgebra;
use torind::dgmod::DgModule;
use torind::ringkit::{FgModule, MonomialRing};

pub const P: u64 = 32003;

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduces in place and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let t = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + p - t * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    rref(&mut rows, p).len()
}

/// Basis of `{v : M v = 0}` where `m` is given by rows.
pub fn nullspace(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][fc]) % p;
            }
            v
        })
        .collect()
}

fn columns_to_rows(cols: &[Vec<u64>], nrows: usize) -> Vec<Vec<u64>> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

// ----- monomial rings -----

pub struct Ring {
    pub nvars: usize,
    pub gens: Vec<Vec<u32>>,
    pub p: u64,
    /// Standard monomials (artinian rings only).
    pub basis: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All exponent vectors of total degree `d` in `m` variables.
fn monomials_of_degree(m: usize, d: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(m - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl Ring {
    pub fn new(nvars: usize, gens: &[&[u32]], p: u64) -> Ring {
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.to_vec()).collect();
        let mut ring = Ring { nvars, gens, p, basis: Vec::new(), index: HashMap::new() };
        if ring.is_artinian() {
            let mut d = 0;
            loop {
                let layer: Vec<Vec<u32>> = monomials_of_degree(nvars, d).into_iter().filter(|e| !ring.in_ideal(e)).collect();
                if layer.is_empty() {
                    break;
                }
                ring.basis.extend(layer);
                d += 1;
            }
            ring.index = ring.basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        }
        ring
    }

    pub fn from_lib(r: &MonomialRing) -> Ring {
        let gens: Vec<Vec<u32>> = r.gens().iter().map(|g| g.0.clone()).collect();
        let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
        Ring::new(r.nvars(), &refs, r.field().characteristic() as u64)
    }

    pub fn in_ideal(&self, e: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, e))
    }

    pub fn is_artinian(&self) -> bool {
        (0..self.nvars).all(|a| self.gens.iter().any(|g| g[a] > 0 && g.iter().enumerate().all(|(b, &x)| b == a || x == 0)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix (columns) of multiplication by `x^e` on the k-basis.
    pub fn mult(&self, e: &[u32]) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|u| {
                let mut col = vec![0; self.dim()];
                let prod: Vec<u32> = u.iter().zip(e).map(|(a, b)| a + b).collect();
                if let Some(&i) = self.index.get(&prod) {
                    col[i] = 1;
                }
                col
            })
            .collect()
    }

    fn var(&self, a: usize) -> Vec<u32> {
        (0..self.nvars).map(|b| u32::from(a == b)).collect()
    }

    /// Koszul homology dims `H_0..H_m` of an artinian ring.
    pub fn koszul_homology(&self) -> Vec<usize> {
        let m = self.nvars;
        let n = self.dim();
        let subsets = |i: usize| -> Vec<Vec<usize>> { (0..1u32 << m).filter(|s| s.count_ones() as usize == i).map(|s| (0..m).filter(|a| s & (1 << a) != 0).collect()).collect() };
        let mut ranks = vec![0usize; m + 2];
        for i in 1..=m {
            let src = subsets(i);
            let dst = subsets(i - 1);
            let mut cols = Vec::new();
            for s in &src {
                for u in 0..n {
                    let mut col = vec![0u64; dst.len() * n];
                    for (t, &a) in s.iter().enumerate() {
                        let rest: Vec<usize> = s.iter().copied().filter(|&b| b != a).collect();
                        let pos = dst.iter().position(|d| *d == rest).unwrap();
                        let prod: Vec<u32> = self.basis[u].iter().zip(self.var(a)).map(|(x, y)| x + y).collect();
                        if let Some(&k) = self.index.get(&prod) {
                            let sign = if t % 2 == 0 { 1 } else { self.p - 1 };
                            col[pos * n + k] = (col[pos * n + k] + sign) % self.p;
                        }
                    }
                    cols.push(col);
                }
            }
            ranks[i] = rank(&cols, self.p);
        }
        (0..=m).map(|i| subsets(i).len() * n - ranks[i] - ranks[i + 1]).collect()
    }

    /// Koszul homology of any monomial ring, computed on internal-degree
    /// strands `0..=deg lcm + m`; `e_I ⊗ u` has internal degree `|I| + deg u`.
    pub fn koszul_homology_strands(&self) -> Vec<usize> {
        let m = self.nvars;
        let lcm: Vec<u32> = (0..m).map(|a| self.gens.iter().map(|g| g[a]).max().unwrap_or(0)).collect();
        let bound = lcm.iter().sum::<u32>() + m as u32;
        let subsets = |i: usize| -> Vec<Vec<usize>> { (0..1u32 << m).filter(|s| s.count_ones() as usize == i).map(|s| (0..m).filter(|a| s & (1 << a) != 0).collect()).collect() };
        let mut total = vec![0usize; m + 1];
        for w in 0..=bound {
            // Basis of the strand in homological degree i.
            let strand = |i: usize| -> Vec<(Vec<usize>, Vec<u32>)> {
                if (w as usize) < i {
                    return Vec::new();
                }
                let mons: Vec<Vec<u32>> = monomials_of_degree(m, w - i as u32).into_iter().filter(|e| !self.in_ideal(e)).collect();
                subsets(i).into_iter().flat_map(|s| mons.iter().map(move |u| (s.clone(), u.clone()))).collect()
            };
            let bases: Vec<Vec<(Vec<usize>, Vec<u32>)>> = (0..=m).map(strand).collect();
            let mut ranks = vec![0usize; m + 2];
            for i in 1..=m {
                let idx: HashMap<&(Vec<usize>, Vec<u32>), usize> = bases[i - 1].iter().enumerate().map(|(k, b)| (b, k)).collect();
                let cols: Vec<Vec<u64>> = bases[i]
                    .iter()
                    .map(|(s, u)| {
                        let mut col = vec![0u64; bases[i - 1].len()];
                        for (t, &a) in s.iter().enumerate() {
                            let rest: Vec<usize> = s.iter().copied().filter(|&b| b != a).collect();
                            let mut prod = u.clone();
                            prod[a] += 1;
                            if let Some(&k) = idx.get(&(rest, prod)) {
                                let sign = if t % 2 == 0 { 1 } else { self.p - 1 };
                                col[k] = (col[k] + sign) % self.p;
                            }
                        }
                        col
                    })
                    .collect();
                ranks[i] = rank(&cols, self.p);
            }
            for i in 0..=m {
                total[i] += bases[i].len() - ranks[i] - ranks[i + 1];
            }
        }
        total
    }

    /// `(depth, ecodepth)` from Koszul homology.
    pub fn depth_ecodepth(&self) -> (usize, usize) {
        let h = if self.is_artinian() { self.koszul_homology() } else { self.koszul_homology_strands() };
        let top = h.iter().rposition(|&d| d != 0).unwrap();
        (self.nvars - top, top)
    }
}

// ----- modules and Tor -----

/// A module as `dim` plus one action matrix (columns) per variable.
#[derive(Clone)]
pub struct Module {
    pub dim: usize,
    pub actions: Vec<Vec<Vec<u64>>>,
}

impl Module {
    pub fn from_lib(m: &FgModule) -> Module {
        let actions = m
            .actions()
            .iter()
            .map(|a| (0..a.cols()).map(|j| (0..a.rows()).map(|i| a.get(i, j) as u64).collect()).collect())
            .collect();
        Module { dim: m.dim(), actions }
    }

    pub fn cyclic(ring: &Ring, ideal: &[&[u32]]) -> Module {
        let keep: Vec<usize> = (0..ring.dim()).filter(|&u| !ideal.iter().any(|g| divides(g, &ring.basis[u]))).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        let actions = (0..ring.nvars)
            .map(|a| {
                let full = ring.mult(&ring.var(a));
                keep.iter()
                    .map(|&u| {
                        let mut col = vec![0; keep.len()];
                        for (t, &c) in full[u].iter().enumerate() {
                            if c != 0 {
                                if let Some(&k) = pos.get(&t) {
                                    col[k] = c;
                                }
                            }
                        }
                        col
                    })
                    .collect()
            })
            .collect();
        Module { dim: keep.len(), actions }
    }

    /// `x^e` acting on a vector.
    fn act(&self, e: &[u32], v: &[u64], p: u64) -> Vec<u64> {
        let mut v = v.to_vec();
        for (a, &k) in e.iter().enumerate() {
            for _ in 0..k {
                v = apply(&self.actions[a], &v, p);
            }
        }
        v
    }
}

fn apply(cols: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    let n = cols.first().map_or(0, Vec::len);
    let mut out = vec![0; n];
    for (j, &c) in v.iter().enumerate() {
        if c != 0 {
            for i in 0..n {
                out[i] = (out[i] + c * cols[j][i]) % p;
            }
        }
    }
    out
}

/// Row-echelon basis grown one vector at a time.
struct Echelon {
    rows: Vec<(usize, Vec<u64>)>,
    p: u64,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { rows: Vec::new(), p }
    }

    /// Adds `v` and reports whether it was independent of the rows so far.
    fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        let Some(pc) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let s = inv(v[pc], p);
        for x in v.iter_mut() {
            *x = *x * s % p;
        }
        self.rows.push((pc, v));
        true
    }
}

/// Greedy choice of vectors from `candidates` spanning a complement of `sub`
/// inside `span(sub ∪ candidates)`.
fn complement(sub: &[Vec<u64>], candidates: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut e = Echelon::new(p);
    for v in sub {
        e.insert(v);
    }
    candidates.iter().filter(|v| e.insert(v)).cloned().collect()
}

/// Ring entries of the differentials of a minimal free resolution of `m`,
/// written out with plain span/kernel computations. `diffs[i][j][l]` is the
/// ring element (k-coordinates) in row `l`, column `j` of `d_{i+1}`.
pub struct Resolution {
    pub betti: Vec<usize>,
    pub diffs: Vec<Vec<Vec<Vec<u64>>>>,
}

pub fn resolve(ring: &Ring, m: &Module, len: usize) -> Resolution {
    let p = ring.p;
    let n = ring.dim();
    // Minimal generators of M: complement of m M.
    let std: Vec<Vec<u64>> = (0..m.dim).map(|i| (0..m.dim).map(|j| u64::from(i == j)).collect()).collect();
    let mm: Vec<Vec<u64>> = (0..ring.nvars).flat_map(|a| m.actions[a].clone()).collect();
    let gens = complement(&mm, &std, p);
    // Map F_0 -> M as columns indexed by (j, u).
    let mut images: Vec<Vec<u64>> = Vec::new();
    for g in &gens {
        for u in &ring.basis {
            images.push(m.act(u, g, p));
        }
    }
    let mut betti = vec![gens.len()];
    let mut diffs = Vec::new();
    let mut map_cols = images;
    let mut target_dim = m.dim;
    for _ in 0..len {
        let b = *betti.last().unwrap();
        let rows = columns_to_rows(&map_cols, target_dim);
        let kernel = nullspace(&rows, b * n, p);
        // x_a acting on F = R^b.
        let act_f = |a: usize, v: &[u64]| -> Vec<u64> {
            let xa = ring.mult(&ring.var(a));
            let mut out = vec![0; b * n];
            for j in 0..b {
                let blk = apply(&xa, &v[j * n..(j + 1) * n], p);
                out[j * n..(j + 1) * n].copy_from_slice(&blk);
            }
            out
        };
        let mk: Vec<Vec<u64>> = (0..ring.nvars).flat_map(|a| kernel.iter().map(move |v| (a, v))).map(|(a, v)| act_f(a, v)).collect();
        let new_gens = complement(&mk, &kernel, p);
        let entries: Vec<Vec<Vec<u64>>> = new_gens.iter().map(|g| (0..b).map(|l| g[l * n..(l + 1) * n].to_vec()).collect()).collect();
        diffs.push(entries);
        // F_{i+1} -> F_i.
        let mut next = Vec::new();
        for g in &new_gens {
            for u in &ring.basis {
                let mut v = g.clone();
                for (a, &k) in u.iter().enumerate() {
                    for _ in 0..k {
                        v = act_f(a, &v);
                    }
                }
                next.push(v);
            }
        }
        betti.push(new_gens.len());
        map_cols = next;
        target_dim = b * n;
        if new_gens.is_empty() {
            break;
        }
    }
    Resolution { betti, diffs }
}

/// `dim Tor_i(M, N)` for `0 <= i <= top`, from `F(M) ⊗ N`.
pub fn tor(ring: &Ring, m: &Module, nmod: &Module, top: usize) -> Vec<usize> {
    tor_from(ring, &resolve(ring, m, top + 1), nmod, top)
}

/// `dim Tor_i(M, N)` for `0 <= i <= top` from a resolution of `M` of length
/// at least `top + 1`.
pub fn tor_from(ring: &Ring, res: &Resolution, nmod: &Module, top: usize) -> Vec<usize> {
    let p = ring.p;
    let betti = |i: usize| res.betti.get(i).copied().unwrap_or(0);
    // Ring element (k-coordinates) acting on N.
    let elem_action = |r: &[u64]| -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; nmod.dim]; nmod.dim];
        for (u, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, col) in out.iter_mut().enumerate() {
                let mut e = vec![0u64; nmod.dim];
                e[j] = 1;
                let v = nmod.act(&ring.basis[u], &e, p);
                for i in 0..nmod.dim {
                    col[i] = (col[i] + c * v[i]) % p;
                }
            }
        }
        out
    };
    let mut ranks = vec![0usize; top + 2];
    for i in 1..=top + 1 {
        let (bi, bprev) = (betti(i), betti(i - 1));
        if bi == 0 || i > res.diffs.len() {
            continue;
        }
        let mut cols = Vec::new();
        for j in 0..bi {
            let blocks: Vec<Vec<Vec<u64>>> = (0..bprev).map(|l| elem_action(&res.diffs[i - 1][j][l])).collect();
            for y in 0..nmod.dim {
                let mut col = vec![0u64; bprev * nmod.dim];
                for l in 0..bprev {
                    col[l * nmod.dim..(l + 1) * nmod.dim].copy_from_slice(&blocks[l][y]);
                }
                cols.push(col);
            }
        }
        ranks[i] = rank(&cols, p);
    }
    (0..=top).map(|i| betti(i) * nmod.dim - ranks[i] - ranks[i + 1]).collect()
}

// ----- DG modules -----

/// Homology dims of a graded complex given by degrees and a differential
/// (columns), keyed by degree.
pub fn graded_homology(degrees: &[i64], diff_cols: &[Vec<u64>], p: u64) -> std::collections::BTreeMap<i64, usize> {
    let mut out = std::collections::BTreeMap::new();
    let mut degs: Vec<i64> = degrees.to_vec();
    degs.sort_unstable();
    degs.dedup();
    let rank_from = |d: i64| -> usize {
        let cols: Vec<Vec<u64>> = (0..degrees.len()).filter(|&j| degrees[j] == d).map(|j| diff_cols[j].clone()).collect();
        rank(&cols, p)
    };
    for &d in &degs {
        let dim = degrees.iter().filter(|&&x| x == d).count();
        let h = dim - rank_from(d) - rank_from(d + 1);
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}

fn mat_cols(m: &torind::Matrix) -> Vec<Vec<u64>> {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j) as u64).collect()).collect()
}

pub fn dg_homology(x: &DgModule) -> std::collections::BTreeMap<i64, usize> {
    graded_homology(x.degrees(), &mat_cols(x.diff()), x.field().characteristic() as u64)
}

pub fn algebra_homology(a: &DgAlgebra) -> std::collections::BTreeMap<i64, usize> {
    let degs: Vec<i64> = a.degrees().iter().map(|&d| d as i64).collect();
    graded_homology(&degs, &mat_cols(a.diff()), a.field().characteristic() as u64)
}

/// `H(X ⊗_A Y)` with `X ⊗_A Y = (X ⊗_k Y) / ((x a) ⊗ y - x ⊗ (a y))` and
/// `x a = (-1)^{|a||x|} a x`, computed degreewise as ranks of stacked spans.
pub fn tensor_homology(x: &DgModule, y: &DgModule) -> std::collections::BTreeMap<i64, usize> {
    let a = x.algebra();
    let p = x.field().characteristic() as u64;
    let (nx, ny) = (x.dim(), y.dim());
    let total = nx * ny;
    let deg = |i: usize| x.degree(i / ny) + y.degree(i % ny);
    let dx = mat_cols(x.diff());
    let dy = mat_cols(y.diff());
    let mut diff_cols = vec![vec![0u64; total]; total];
    for xi in 0..nx {
        let sign = if x.degree(xi).rem_euclid(2) == 1 { p - 1 } else { 1 };
        for yi in 0..ny {
            let col = &mut diff_cols[xi * ny + yi];
            for (t, &c) in dx[xi].iter().enumerate() {
                col[t * ny + yi] = (col[t * ny + yi] + c) % p;
            }
            for (t, &c) in dy[yi].iter().enumerate() {
                col[xi * ny + t] = (col[xi * ny + t] + sign * c) % p;
            }
        }
    }
    let mut relations: Vec<Vec<u64>> = Vec::new();
    for b in 0..a.dim() {
        if b == a.unit() {
            continue;
        }
        let ax = mat_cols(x.action(b));
        let ay = mat_cols(y.action(b));
        for xi in 0..nx {
            let odd = a.degree(b) % 2 == 1 && x.degree(xi).rem_euclid(2) == 1;
            for yi in 0..ny {
                let mut v = vec![0u64; total];
                for (t, &c) in ax[xi].iter().enumerate() {
                    let c = if odd { (p - c) % p } else { c };
                    v[t * ny + yi] = (v[t * ny + yi] + c) % p;
                }
                for (t, &c) in ay[yi].iter().enumerate() {
                    v[xi * ny + t] = (v[xi * ny + t] + p - c) % p;
                }
                if v.iter().any(|&c| c != 0) {
                    relations.push(v);
                }
            }
        }
    }
    // Local coordinates per degree; relations and differentials are homogeneous.
    let mut local: std::collections::BTreeMap<i64, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..total {
        local.entry(deg(i)).or_default().push(i);
    }
    let restrict = |v: &[u64], d: i64| -> Vec<u64> { local.get(&d).map_or(Vec::new(), |idx| idx.iter().map(|&i| v[i]).collect()) };
    let mut rels: std::collections::BTreeMap<i64, Vec<Vec<u64>>> = std::collections::BTreeMap::new();
    for v in &relations {
        let d = deg(v.iter().position(|&c| c != 0).unwrap());
        rels.entry(d).or_default().push(restrict(v, d));
    }
    let rel_rank = |d: i64| rels.get(&d).map_or(0, |r| rank(r, p));
    // Rank of the induced map from degree d to d - 1.
    let induced = |d: i64| -> usize {
        let Some(src) = local.get(&d) else { return 0 };
        let r = rels.get(&(d - 1)).cloned().unwrap_or_default();
        let base = rank(&r, p);
        let mut both = r;
        both.extend(src.iter().map(|&i| restrict(&diff_cols[i], d - 1)));
        if both.first().is_some_and(Vec::is_empty) {
            return 0;
        }
        rank(&both, p) - base
    };
    let mut out = std::collections::BTreeMap::new();
    for (&d, idx) in &local {
        let h = idx.len() - rel_rank(d) - induced(d) - induced(d + 1);
        if h > 0 {
            out.insert(d, h);
        }
    }
    out
}
