use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::int::Int;
use super::snf::{invariant_factors, smith_form, SmithForm};
use super::sparse::SparseIntMatrix;
use crate::error::LinalgError;

/// Finitely generated free chain complex over the integers, supported in `[lo, hi]`.
///
/// `boundary(p)` is the matrix of `d_p : C_p -> C_{p-1}`; degrees outside the
/// window have rank zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexZ {
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexZ {
    /// `boundaries[i]` is `d_{lo+i}`; the first must have zero rows.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self, LinalgError> {
        if ranks.is_empty() {
            return Err(LinalgError::InvalidComplex("empty degree window".into()));
        }
        if ranks.len() != boundaries.len() {
            return Err(LinalgError::InvalidComplex(
                "one boundary matrix per degree required".into(),
            ));
        }
        let hi = lo + ranks.len() as i64 - 1;
        for (i, d) in boundaries.iter().enumerate() {
            let below = if i == 0 { 0 } else { ranks[i - 1] };
            if d.shape() != (below, ranks[i]) {
                return Err(LinalgError::InvalidComplex(format!(
                    "boundary in degree {} has shape {:?}, expected {:?}",
                    lo + i as i64,
                    d.shape(),
                    (below, ranks[i])
                )));
            }
        }
        let c = ChainComplexZ {
            lo,
            hi,
            ranks,
            boundaries,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    /// Builds from the matrices `d_lo .. d_hi` inferring ranks from column counts.
    pub fn from_boundaries(lo: i64, boundaries: Vec<SparseIntMatrix>) -> Result<Self, LinalgError> {
        let ranks = boundaries.iter().map(|d| d.cols()).collect();
        Self::new(lo, ranks, boundaries)
    }

    fn check_square_zero(&self) -> Result<(), LinalgError> {
        for p in self.lo + 1..=self.hi {
            let prod = self.boundary(p - 1).mul(&self.boundary(p))?;
            if !prod.is_zero() {
                return Err(LinalgError::NotAComplex(p));
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn rank(&self, p: i64) -> usize {
        if p < self.lo || p > self.hi {
            0
        } else {
            self.ranks[(p - self.lo) as usize]
        }
    }

    /// Matrix of `d_p`, including the zero maps at and beyond the window edges.
    pub fn boundary(&self, p: i64) -> SparseIntMatrix {
        if p < self.lo || p > self.hi {
            if p == self.hi + 1 {
                return SparseIntMatrix::zeros(self.rank(self.hi), 0);
            }
            return SparseIntMatrix::zeros(self.rank(p - 1), self.rank(p));
        }
        self.boundaries[(p - self.lo) as usize].clone()
    }

    pub fn boundary_ref(&self, p: i64) -> Option<&SparseIntMatrix> {
        if p < self.lo || p > self.hi {
            None
        } else {
            Some(&self.boundaries[(p - self.lo) as usize])
        }
    }

    /// Same complex re-indexed so that old degree `p` becomes `p + k`.
    pub fn shift(&self, k: i64) -> ChainComplexZ {
        ChainComplexZ {
            lo: self.lo + k,
            hi: self.hi + k,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.clone(),
        }
    }

    /// Pads the window with zero groups so it covers `[lo, hi]`.
    pub fn extend_window(&self, lo: i64, hi: i64) -> ChainComplexZ {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi));
        let ranks: Vec<usize> = (lo..=hi).map(|p| self.rank(p)).collect();
        let boundaries = (lo..=hi)
            .map(|p| {
                let below = if p == lo { 0 } else { self.rank(p - 1) };
                match self.boundary_ref(p) {
                    Some(d) if p > lo => d.clone(),
                    _ => SparseIntMatrix::zeros(below, self.rank(p)),
                }
            })
            .collect();
        ChainComplexZ {
            lo,
            hi,
            ranks,
            boundaries,
        }
    }

    /// Invariant factors of every boundary matrix, computed in parallel.
    fn all_factors(&self) -> Vec<Vec<Int>> {
        self.boundaries.par_iter().map(invariant_factors).collect()
    }

    pub fn homology(&self, p: i64) -> HomologyGroup {
        if p < self.lo || p > self.hi {
            return HomologyGroup::zero();
        }
        let out = self.boundary_ref(p).map(invariant_factors).unwrap_or_default();
        let inc = self.boundary_ref(p + 1).map(invariant_factors).unwrap_or_default();
        HomologyGroup::from_factors(self.rank(p), out.len(), &inc)
    }

    /// Homology in every degree of the window, in order.
    pub fn homology_all(&self) -> Vec<(i64, HomologyGroup)> {
        let f = self.all_factors();
        let n = self.ranks.len();
        (0..n)
            .map(|i| {
                let inc: &[Int] = if i + 1 < n { &f[i + 1] } else { &[] };
                (
                    self.lo + i as i64,
                    HomologyGroup::from_factors(self.ranks[i], f[i].len(), inc),
                )
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_all().iter().all(|(_, h)| h.is_zero())
    }

    /// Basis data for `H_p`: generating cycles and a coordinate map.
    pub fn homology_basis(&self, p: i64) -> HomologyBasis {
        HomologyBasis::compute(self, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^free_rank ⊕ ⊕ Z/tᵢ`, with the cyclic orders rewritten as invariant factors.
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Self {
        let mut t: Vec<Int> = torsion.iter().map(Int::abs).filter(|t| !t.is_unit()).collect();
        assert!(t.iter().all(|x| !x.is_zero()), "torsion order zero");
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let (g, l) = (t[i].gcd(&t[j]), t[i].lcm(&t[j]));
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|x| !x.is_unit());
        HomologyGroup { free_rank, torsion: t }
    }

    fn from_factors(rank_p: usize, rank_out: usize, incoming: &[Int]) -> Self {
        let free_rank = rank_p - rank_out - incoming.len();
        let torsion = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
        HomologyGroup { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Generators of `H_p` and the means to express any cycle in them.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: i64,
    /// Cycles generating the free part, in coordinate order.
    pub free: Vec<Vec<Int>>,
    /// `(order, cycle)` for each cyclic torsion summand.
    pub torsion: Vec<(Int, Vec<Int>)>,
    kernel_rank_offset: usize,
    v_inv: SparseIntMatrix,
    second: SmithForm,
    second_u: SparseIntMatrix,
    boundary: SparseIntMatrix,
    dim: usize,
}

/// Coordinates of a cycle: free part exactly, torsion part reduced mod the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCoordinates {
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

impl HomologyCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Int::is_zero) && self.torsion.iter().all(Int::is_zero)
    }
}

impl HomologyBasis {
    fn compute(c: &ChainComplexZ, p: i64) -> Self {
        let dim = c.rank(p);
        let d_out = c.boundary(p);
        let d_in = c.boundary(p + 1);
        let first = smith_form(&d_out);
        let r = first.rank();
        let v = first.v();
        let v_inv = first.v_inv();
        let k = dim - r;
        // image of d_{p+1} in kernel coordinates
        let img = v_inv.mul(&d_in).expect("shapes");
        let trip = img
            .entries()
            .iter()
            .filter(|(row, _, _)| *row >= r)
            .map(|(row, col, x)| (row - r, *col, x.clone()));
        let b = SparseIntMatrix::from_triplets(k, d_in.cols(), trip);
        let second = smith_form(&b);
        let u2 = second.u();
        let u2_inv = second.u_inv();
        let kernel = SparseIntMatrix::from_triplets(
            dim,
            k,
            v.entries()
                .iter()
                .filter(|(_, col, _)| *col >= r)
                .map(|(row, col, x)| (*row, col - r, x.clone())),
        );
        let gens = kernel.mul(&u2_inv).expect("shapes");
        let gen_cols = gens.col_lists();
        let dense_col = |j: usize| {
            let mut out = vec![Int::ZERO; dim];
            for (row, x) in &gen_cols[j] {
                out[*row] = x.clone();
            }
            out
        };
        let diag = second.diagonal();
        let mut torsion = Vec::new();
        for (i, e) in diag.iter().enumerate() {
            if !e.is_one() {
                torsion.push((e.clone(), dense_col(i)));
            }
        }
        let free = (diag.len()..k).map(dense_col).collect();
        HomologyBasis {
            degree: p,
            free,
            torsion,
            kernel_rank_offset: r,
            v_inv,
            second,
            second_u: u2,
            boundary: d_out,
            dim,
        }
    }

    pub fn group(&self) -> HomologyGroup {
        HomologyGroup {
            free_rank: self.free.len(),
            torsion: self.torsion.iter().map(|(d, _)| d.clone()).collect(),
        }
    }

    pub fn is_cycle(&self, z: &[Int]) -> bool {
        self.boundary.mul_vec(z).iter().all(Int::is_zero)
    }

    /// Coordinates of the class of a cycle; `None` if `z` is not a cycle.
    pub fn coordinates(&self, z: &[Int]) -> Option<HomologyCoordinates> {
        assert_eq!(z.len(), self.dim, "vector length mismatch");
        if !self.is_cycle(z) {
            return None;
        }
        let r = self.kernel_rank_offset;
        let y_full = self.v_inv.mul_vec(z);
        let y: Vec<Int> = y_full[r..].to_vec();
        let w = self.second_u.mul_vec(&y);
        let diag = self.second.diagonal();
        let mut torsion = Vec::new();
        for (i, e) in diag.iter().enumerate() {
            if !e.is_one() {
                torsion.push(w[i].div_rem_euclid(e).1);
            }
        }
        Some(HomologyCoordinates {
            free: w[diag.len()..].to_vec(),
            torsion,
        })
    }

    /// True when `z` is a boundary.
    pub fn is_boundary(&self, z: &[Int]) -> bool {
        self.coordinates(z).is_some_and(|c| c.is_zero())
    }
}

/// Degreewise integer maps between two complexes with equal windows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMap {
    source: ChainComplexZ,
    target: ChainComplexZ,
    maps: Vec<SparseIntMatrix>,
}

impl ChainMap {
    /// `maps[i]` acts in degree `lo + i`. Checks shapes and commutation exactly.
    pub fn new(source: ChainComplexZ, target: ChainComplexZ, maps: Vec<SparseIntMatrix>) -> Result<Self, LinalgError> {
        if source.window() != target.window() {
            return Err(LinalgError::WindowMismatch {
                source_window: source.window(),
                target_window: target.window(),
            });
        }
        if maps.len() != source.ranks.len() {
            return Err(LinalgError::InvalidChainMap("one matrix per degree required".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            let p = source.lo + i as i64;
            if m.shape() != (target.rank(p), source.rank(p)) {
                return Err(LinalgError::InvalidChainMap(format!(
                    "degree {p} has shape {:?}",
                    m.shape()
                )));
            }
        }
        let f = ChainMap { source, target, maps };
        for p in f.source.lo + 1..=f.source.hi {
            let left = f.target.boundary(p).mul(f.map(p).expect("in window"))?;
            let right = f.map(p - 1).expect("in window").mul(&f.source.boundary(p))?;
            if left != right {
                return Err(LinalgError::NotAChainMap(p));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplexZ) -> Self {
        let maps = c.ranks.iter().map(|&r| SparseIntMatrix::identity(r)).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &ChainComplexZ, target: &ChainComplexZ) -> Result<Self, LinalgError> {
        let maps = (source.lo..=source.hi)
            .map(|p| SparseIntMatrix::zeros(target.rank(p), source.rank(p)))
            .collect();
        Self::new(source.clone(), target.clone(), maps)
    }

    pub fn source(&self) -> &ChainComplexZ {
        &self.source
    }

    pub fn target(&self) -> &ChainComplexZ {
        &self.target
    }

    pub fn map(&self, p: i64) -> Option<&SparseIntMatrix> {
        if p < self.source.lo || p > self.source.hi {
            None
        } else {
            Some(&self.maps[(p - self.source.lo) as usize])
        }
    }

    pub fn maps(&self) -> &[SparseIntMatrix] {
        &self.maps
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap, LinalgError> {
        if self.target != g.source {
            return Err(LinalgError::InvalidChainMap(
                "composition: target and source differ".into(),
            ));
        }
        let maps = self
            .maps
            .iter()
            .zip(&g.maps)
            .map(|(f, gm)| gm.mul(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainMap {
            source: self.source.clone(),
            target: g.target.clone(),
            maps,
        })
    }

    /// `cone_p = T_p ⊕ S_{p-1}` with boundary `[[dT, f], [0, -dS]]`, window `[lo, hi + 1]`.
    pub fn mapping_cone(&self) -> ChainComplexZ {
        let (lo, hi) = self.source.window();
        let s = &self.source;
        let t = &self.target;
        let mut ranks = Vec::new();
        let mut boundaries = Vec::new();
        for p in lo..=hi + 1 {
            let (tp, sp1) = (t.rank(p), s.rank(p - 1));
            let (tq, sq1) = (t.rank(p - 1), s.rank(p - 2));
            ranks.push(tp + sp1);
            if p == lo {
                boundaries.push(SparseIntMatrix::zeros(0, tp + sp1));
                continue;
            }
            let dt = t.boundary(p);
            let ds = s.boundary(p - 1).neg();
            let f = self
                .map(p - 1)
                .cloned()
                .unwrap_or_else(|| SparseIntMatrix::zeros(tq, sp1));
            let dt_ok = (dt.rows() == tq && dt.cols() == tp).then_some(&dt);
            let ds_ok = (ds.rows() == sq1 && ds.cols() == sp1).then_some(&ds);
            let blocks = vec![vec![dt_ok, Some(&f)], vec![None, ds_ok]];
            boundaries.push(SparseIntMatrix::block(&[tq, sq1], &[tp, sp1], &blocks));
        }
        let cone = ChainComplexZ {
            lo,
            hi: hi + 1,
            ranks,
            boundaries,
        };
        debug_assert!(
            cone.check_square_zero().is_ok(),
            "cone boundary does not square to zero"
        );
        cone
    }

    /// Decides whether `self` induces isomorphisms in homology, via acyclicity of the cone.
    pub fn is_quasi_iso(&self) -> QuasiIsoCertificate {
        let cone = self.mapping_cone();
        let homology = cone.homology_all();
        let failures: Vec<(i64, HomologyGroup)> = homology.iter().filter(|(_, h)| !h.is_zero()).cloned().collect();
        QuasiIsoCertificate {
            quasi_iso: failures.is_empty(),
            cone_homology: homology,
            failures,
        }
    }
}

/// Outcome of a quasi-isomorphism test: the cone's homology in every degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoCertificate {
    pub quasi_iso: bool,
    pub cone_homology: Vec<(i64, HomologyGroup)>,
    pub failures: Vec<(i64, HomologyGroup)>,
}

pub fn mapping_cone(f: &ChainMap) -> ChainComplexZ {
    f.mapping_cone()
}

pub fn is_quasi_iso(f: &ChainMap) -> QuasiIsoCertificate {
    f.is_quasi_iso()
}

/// Like [`ChainMap::new`] but pads windows first so that they agree.
pub fn chain_map_padded(
    source: &ChainComplexZ,
    target: &ChainComplexZ,
    maps: impl Fn(i64) -> SparseIntMatrix,
) -> Result<ChainMap, LinalgError> {
    let lo = source.lo().min(target.lo());
    let hi = source.hi().max(target.hi());
    let s = source.extend_window(lo, hi);
    let t = target.extend_window(lo, hi);
    let m = (lo..=hi)
        .map(|p| {
            let x = maps(p);
            if x.shape() == (t.rank(p), s.rank(p)) {
                x
            } else {
                SparseIntMatrix::zeros(t.rank(p), s.rank(p))
            }
        })
        .collect();
    ChainMap::new(s, t, m)
}
