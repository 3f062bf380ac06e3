//! Independent oracles and random inputs for the integration tests.
//!
//! The oracles work on dense `i128` matrices with a textbook Smith reduction
//! and share no code with the crate's sparse engine.

#![allow(dead_code)]

use pdpair::complex::{SimplicialComplex, SimplicialPair};
use pdpair::duality::{CycleClass, TwistedComplex};
use pdpair::group::{low_index_tables, orientation_systems, permutation_system, presentation, simplify, EdgeSystem};
use pdpair::linalg::{ChainComplexZ, ChainMap, HomologyGroup, Int, SparseIntMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<i128>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn dense(m: &SparseIntMatrix) -> Dense {
    m.to_dense()
        .iter()
        .map(|row| row.iter().map(|v| v.to_i64().expect("small entry") as i128).collect())
        .collect()
}

pub fn sparse(m: &Dense, cols: usize) -> SparseIntMatrix {
    let rows: Vec<Vec<Int>> = m
        .iter()
        .map(|r| r.iter().map(|&v| Int::from(v as i64)).collect())
        .collect();
    SparseIntMatrix::from_dense(&rows, cols)
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Nonzero diagonal of the Smith form, by repeated minimal-pivot division.
pub fn smith_diagonal(mut a: Dense) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn finish(mut d: Vec<i128>) -> Vec<i128> {
    d.sort_unstable();
    d
}

pub fn as_group(free: usize, torsion: &[i128]) -> HomologyGroup {
    HomologyGroup::new(free, torsion.iter().map(|&t| int(t as i64)).collect())
}

/// Homology of `C_lo .. C_hi` given dense boundaries `d[i] = d_{lo+i}`.
pub fn dense_homology(ranks: &[usize], d: &[Dense]) -> Vec<HomologyGroup> {
    let diags: Vec<Vec<i128>> = d.iter().map(|m| smith_diagonal(m.clone())).collect();
    (0..ranks.len())
        .map(|i| {
            let out = diags[i].len();
            let incoming: &[i128] = diags.get(i + 1).map_or(&[], |v| v.as_slice());
            let torsion: Vec<i128> = incoming.iter().copied().filter(|&x| x != 1).collect();
            as_group(ranks[i] - out - incoming.len(), &torsion)
        })
        .collect()
}

pub fn complex_dense(c: &ChainComplexZ) -> (Vec<usize>, Vec<Dense>) {
    let ranks: Vec<usize> = (c.lo()..=c.hi()).map(|p| c.rank(p)).collect();
    let d = (c.lo()..=c.hi()).map(|p| dense(&c.boundary(p))).collect();
    (ranks, d)
}

pub fn homology_oracle(c: &ChainComplexZ) -> Vec<HomologyGroup> {
    let (ranks, d) = complex_dense(c);
    dense_homology(&ranks, &d)
}

/// Dense cone of a chain map, built independently of the crate's cone.
pub fn cone_oracle(f: &ChainMap) -> Vec<HomologyGroup> {
    let (s, t) = (f.source(), f.target());
    let (lo, hi) = (s.lo(), s.hi());
    let rank = |c: &ChainComplexZ, p: i64| if p < lo || p > hi { 0 } else { c.rank(p) };
    let mut ranks = Vec::new();
    let mut ds = Vec::new();
    for p in lo..=hi + 1 {
        let (tp, sp1, tq, sq1) = (rank(t, p), rank(s, p - 1), rank(t, p - 1), rank(s, p - 2));
        ranks.push(tp + sp1);
        let mut m = vec![vec![0i128; tp + sp1]; tq + sq1];
        if p > lo {
            if p <= hi {
                let dt = dense(&t.boundary(p));
                for (i, row) in dt.iter().enumerate() {
                    m[i][..tp].copy_from_slice(row);
                }
            }
            let fp = dense(f.map(p - 1).expect("in window"));
            for (i, row) in fp.iter().enumerate() {
                m[i][tp..].copy_from_slice(row);
            }
            if p - 1 > lo {
                let dsm = dense(&s.boundary(p - 1));
                for (i, row) in dsm.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m[tq + i][tp + j] = -v;
                    }
                }
            }
        }
        ds.push(m);
    }
    dense_homology(&ranks, &ds)
}

pub fn random_dense(r: &mut ChaCha8Rng, rows: usize, cols: usize, range: i64, density: f64) -> Dense {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if r.gen_bool(density) {
                        r.gen_range(-range..=range) as i128
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// A unimodular matrix and its inverse, as products of elementary operations.
pub fn random_unimodular(r: &mut ChaCha8Rng, n: usize, steps: usize) -> (Dense, Dense) {
    let mut u: Dense = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let mut inv = u.clone();
    if n < 2 {
        if n == 1 && r.gen_bool(0.5) {
            u[0][0] = -1;
            inv[0][0] = -1;
        }
        return (u, inv);
    }
    for _ in 0..steps {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = r.gen_range(-2..=2i128);
        // row_i += k row_j on u; col_j -= k col_i on inv
        for c in 0..n {
            u[i][c] += k * u[j][c];
        }
        for row in inv.iter_mut() {
            row[j] -= k * row[i];
        }
    }
    (u, inv)
}

pub fn mat_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Summands of a free complex whose homology is known by construction.
#[derive(Clone, Debug)]
pub enum Piece {
    /// `Z` in one degree.
    Free(usize),
    /// `Z --m--> Z` from degree `p + 1` to `p`.
    Arrow(usize, i64),
}

/// A complex on degrees `0..=top` assembled from pieces and then hidden by
/// random changes of basis.
#[derive(Clone, Debug)]
pub struct Known {
    pub complex: ChainComplexZ,
    pub pieces: Vec<Piece>,
    /// Basis change applied in each degree, with its inverse.
    pub basis: Vec<(Dense, Dense)>,
}

impl Known {
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let top = self.complex.hi() as usize;
        (0..=top)
            .map(|p| {
                let free = self
                    .pieces
                    .iter()
                    .filter(|x| matches!(x, Piece::Free(q) if *q == p))
                    .count()
                    + self
                        .pieces
                        .iter()
                        .filter(|x| matches!(x, Piece::Arrow(q, 0) if *q == p || *q + 1 == p))
                        .count();
                let torsion: Vec<i128> = self
                    .pieces
                    .iter()
                    .filter_map(|x| match x {
                        Piece::Arrow(q, m) if *q == p && m.abs() > 1 => Some(m.abs() as i128),
                        _ => None,
                    })
                    .collect();
                as_group(free, &torsion)
            })
            .collect()
    }
}

pub fn random_pieces(r: &mut ChaCha8Rng, top: usize, count: usize) -> Vec<Piece> {
    (0..count)
        .map(|_| {
            if top == 0 || r.gen_bool(0.4) {
                Piece::Free(r.gen_range(0..=top))
            } else {
                let m = *[0i64, 1, -1, 2, 3, -4, 6].choose(r).expect("nonempty");
                Piece::Arrow(r.gen_range(0..top), m)
            }
        })
        .collect()
}

pub fn known_complex(r: &mut ChaCha8Rng, pieces: Vec<Piece>, top: usize) -> Known {
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (k, x) in pieces.iter().enumerate() {
        match x {
            Piece::Free(p) => slots[*p].push(k),
            Piece::Arrow(p, _) => {
                slots[*p].push(k);
                slots[*p + 1].push(k);
            }
        }
    }
    let ranks: Vec<usize> = slots.iter().map(Vec::len).collect();
    let basis: Vec<(Dense, Dense)> = ranks.iter().map(|&n| random_unimodular(r, n, 3 * n)).collect();
    let mut bds = vec![SparseIntMatrix::zeros(0, ranks[0])];
    for p in 1..=top {
        let mut d = vec![vec![0i128; ranks[p]]; ranks[p - 1]];
        for (col, &k) in slots[p].iter().enumerate() {
            if let Piece::Arrow(q, m) = pieces[k] {
                if q + 1 == p {
                    let row = slots[p - 1].iter().position(|&x| x == k).expect("arrow target");
                    d[row][col] = m as i128;
                }
            }
        }
        // P_{p-1} d P_p^{-1}
        let left = mat_mul(&basis[p - 1].0, &d, ranks[p - 1], ranks[p]);
        let conj = mat_mul(&left, &basis[p].1, ranks[p], ranks[p]);
        bds.push(sparse(&conj, ranks[p]));
    }
    let complex = ChainComplexZ::new(0, ranks, bds).expect("conjugated pieces form a complex");
    Known { complex, pieces, basis }
}

pub fn random_known(r: &mut ChaCha8Rng, max_top: usize, max_pieces: usize) -> Known {
    let top = r.gen_range(0..=max_top);
    let count = r.gen_range(1..=max_pieces);
    let pieces = random_pieces(r, top, count);
    known_complex(r, pieces, top)
}

/// A random complex on at most `n` vertices with facets of dimension at most `d`.
pub fn random_complex(r: &mut ChaCha8Rng, n: usize, d: usize, facets: usize) -> SimplicialComplex {
    let verts: Vec<usize> = (0..n).collect();
    let fs: Vec<Vec<usize>> = (0..facets)
        .map(|_| {
            let k = r.gen_range(1..=d + 1);
            verts.choose_multiple(r, k.min(n)).copied().collect()
        })
        .collect();
    SimplicialComplex::from_facets(n, fs).expect("random facets are simplices")
}

pub fn random_connected_complex(r: &mut ChaCha8Rng, n: usize, d: usize, facets: usize) -> SimplicialComplex {
    loop {
        let c = random_complex(r, n, d, facets);
        let used = c.vertices();
        if used.len() >= 2 && c.is_connected() {
            let (c, _) = c.compacted();
            return c;
        }
    }
}

/// A subcomplex spanned by a random vertex subset.
pub fn random_pair(r: &mut ChaCha8Rng, x: SimplicialComplex) -> SimplicialPair {
    let keep: Vec<usize> = x.vertices().into_iter().filter(|_| r.gen_bool(0.4)).collect();
    let sub = x.induced(&keep);
    SimplicialPair::new(x, sub).expect("induced subcomplex")
}

/// A random rank-one sign system on a connected complex.
pub fn random_sign_system(r: &mut ChaCha8Rng, x: &SimplicialComplex) -> EdgeSystem {
    let pres = presentation(x, x.vertices()[0]).expect("connected");
    let all = orientation_systems(&pres);
    let pick = all.choose(r).expect("trivial system exists");
    pick.edge_system(&pres).expect("matches presentation")
}

pub fn random_vector(r: &mut ChaCha8Rng, len: usize, range: i64) -> Vec<Int> {
    (0..len).map(|_| int(r.gen_range(-range..=range))).collect()
}

/// A random permutation system of degree at most 3 on a connected complex,
/// or the trivial rank-one system when there is none.
pub fn random_permutation_system(r: &mut ChaCha8Rng, x: &SimplicialComplex) -> EdgeSystem {
    let pres = presentation(x, x.vertices()[0]).expect("connected");
    let (tables, _) = low_index_tables(&pres, &simplify(&pres), 3, 20_000);
    match tables.choose(r) {
        Some(t) => permutation_system(&pres, t)
            .and_then(|s| s.edge_system(&pres))
            .expect("table matches presentation"),
        None => EdgeSystem::trivial(1),
    }
}

/// A sign system or a permutation system, each half the time.
pub fn random_system(r: &mut ChaCha8Rng, x: &SimplicialComplex) -> EdgeSystem {
    if r.gen_bool(0.5) {
        random_sign_system(r, x)
    } else {
        random_permutation_system(r, x)
    }
}

/// A random (co)cycle of degree `p`: a combination of homology generators
/// plus a random (co)boundary.
pub fn random_cycle(r: &mut ChaCha8Rng, tc: &TwistedComplex, p: usize) -> CycleClass {
    let c = tc.realized();
    let basis = c.homology_basis(tc.realized_degree(p));
    let mut v = vec![Int::ZERO; tc.group_rank(p)];
    let gens = basis.free.iter().chain(basis.torsion.iter().map(|(_, g)| g));
    for g in gens {
        let k = int(r.gen_range(-2..=2));
        v = v.iter().zip(g).map(|(a, b)| a.add_mul(&k, b)).collect();
    }
    // anything in the image of the incoming differential
    let incoming = c.boundary(tc.realized_degree(p) + 1);
    let w = random_vector(r, incoming.cols(), 2);
    v = v.iter().zip(incoming.mul_vec(&w)).map(|(a, b)| a + &b).collect();
    CycleClass {
        degree: p,
        variance: tc.variance(),
        coeffs: v,
    }
}

/// Multiplication by `k` is an isomorphism on a group `Z^f ⊕ ⊕ Z/t`.
pub fn scaling_is_iso(h: &[HomologyGroup], k: i64) -> bool {
    k.abs() == 1
        || h.iter()
            .all(|g| g.free_rank == 0 && g.torsion.iter().all(|t| t.gcd(&int(k)).is_one()))
}

/// Onto the first `keep` pieces (in the hidden basis), then `k` times a fresh
/// change of basis. Returns a chain map from `source` to the kept part.
pub fn projection_then_scale(r: &mut ChaCha8Rng, source: &Known, keep: usize, k: i64) -> ChainMap {
    let s = &source.complex;
    let top = s.hi() as usize;
    // rebuild the kept complex with its own basis change and map into it
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (idx, x) in source.pieces.iter().enumerate() {
        match x {
            Piece::Free(p) => slots[*p].push(idx),
            Piece::Arrow(p, _) => {
                slots[*p].push(idx);
                slots[*p + 1].push(idx);
            }
        }
    }
    let kept: Vec<Vec<usize>> = slots
        .iter()
        .map(|v| v.iter().copied().filter(|&i| i < keep).collect())
        .collect();
    let ranks: Vec<usize> = kept.iter().map(Vec::len).collect();
    let basis: Vec<(Dense, Dense)> = ranks.iter().map(|&n| random_unimodular(r, n, 2 * n)).collect();
    let mut bds = vec![SparseIntMatrix::zeros(0, ranks[0])];
    let mut maps = Vec::new();
    for p in 0..=top {
        if p > 0 {
            let mut d = vec![vec![0i128; ranks[p]]; ranks[p - 1]];
            for (col, &i) in kept[p].iter().enumerate() {
                if let Piece::Arrow(q, m) = source.pieces[i] {
                    if q + 1 == p {
                        let row = kept[p - 1].iter().position(|&x| x == i).unwrap();
                        d[row][col] = m as i128;
                    }
                }
            }
            let conj = mat_mul(
                &mat_mul(&basis[p - 1].0, &d, ranks[p - 1], ranks[p]),
                &basis[p].1,
                ranks[p],
                ranks[p],
            );
            bds.push(sparse(&conj, ranks[p]));
        }
        // hidden coordinates: source basis^{-1}, project, scale, then target basis
        let n = slots[p].len();
        let mut proj = vec![vec![0i128; n]; ranks[p]];
        for (row, &i) in kept[p].iter().enumerate() {
            let col = slots[p].iter().position(|&x| x == i).unwrap();
            proj[row][col] = k as i128;
        }
        let m = mat_mul(&mat_mul(&basis[p].0, &proj, ranks[p], n), &source.basis[p].1, n, n);
        maps.push(sparse(&m, n));
    }
    let target = ChainComplexZ::new(0, ranks, bds).unwrap();
    ChainMap::new(s.clone(), target, maps).expect("projection commutes")
}
