//! Simplicial chains and cochains with local coefficients.
//!
//! A twisted `p`-simplex carries its coefficient at its minimal vertex. The
//! `0`-th face has minimal vertex `σ₁`, so its term in `∂σ` is transported
//! along `σ₀ → σ₁`; in `δ` the value on the `0`-th face is carried back along
//! the inverse edge.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialPair};
use crate::error::DualityError;
use crate::group::{EdgeSystem, GroupPresentation, LocalSystem};
use crate::linalg::{ChainComplexZ, HomologyGroup, Int, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Chain,
    Cochain,
}

const ABSENT: usize = usize::MAX;

/// A twisted (co)chain complex of a pair together with its basis bookkeeping.
///
/// Chains of degree `p` sit in degree `p` of the realized complex; cochains of
/// degree `p` sit in degree `-p`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    variance: Variance,
    relative: bool,
    rank: usize,
    dim: i64,
    basis: Vec<Vec<usize>>,
    position: Vec<Vec<usize>>,
    realized: ChainComplexZ,
}

impl TwistedComplex {
    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    /// Rank of the coefficient system.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// Indices, in the total complex, of the `p`-simplices spanning degree `p`.
    pub fn basis(&self, p: usize) -> &[usize] {
        self.basis.get(p).map_or(&[], |b| b.as_slice())
    }

    /// Block position of a `p`-simplex (by total-complex index).
    pub fn position(&self, p: usize, simplex_index: usize) -> Option<usize> {
        let pos = *self.position.get(p)?.get(simplex_index)?;
        (pos != ABSENT).then_some(pos)
    }

    /// Coordinate of `(simplex, module index)` in the realized group of degree `p`.
    pub fn coordinate(&self, p: usize, simplex_index: usize, j: usize) -> Option<usize> {
        self.position(p, simplex_index).map(|k| k * self.rank + j)
    }

    pub fn group_rank(&self, p: usize) -> usize {
        self.basis(p).len() * self.rank
    }

    pub fn realized(&self) -> &ChainComplexZ {
        &self.realized
    }

    /// Degree of the realized complex holding (co)chains of degree `p`.
    pub fn realized_degree(&self, p: usize) -> i64 {
        match self.variance {
            Variance::Chain => p as i64,
            Variance::Cochain => -(p as i64),
        }
    }

    pub fn homology(&self, p: usize) -> HomologyGroup {
        self.realized.homology(self.realized_degree(p))
    }

    /// (Co)homology in degrees `0..=dim`.
    pub fn homology_all(&self) -> Vec<HomologyGroup> {
        let all = self.realized.homology_all();
        (0..=self.dim.max(0) as usize)
            .map(|p| {
                let d = self.realized_degree(p);
                all.iter()
                    .find(|(q, _)| *q == d)
                    .map(|(_, h)| h.clone())
                    .unwrap_or_else(HomologyGroup::zero)
            })
            .collect()
    }

    /// (Co)boundary of a (co)chain of degree `p`.
    pub fn differential(&self, p: usize, x: &[Int]) -> Vec<Int> {
        let d = self.realized_degree(p);
        self.realized.boundary(d).mul_vec(x)
    }

    pub fn is_closed(&self, class: &CycleClass) -> bool {
        class.coeffs.len() == self.group_rank(class.degree)
            && self.differential(class.degree, &class.coeffs).iter().all(Int::is_zero)
    }

    /// Sparse `[simplex index, module index, value]` triples of a vector.
    pub fn to_class_file(&self, class: &CycleClass) -> ClassFile {
        let r = self.rank;
        let coeffs = class
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.basis(class.degree)[i / r], i % r, v.clone()))
            .collect();
        ClassFile {
            degree: class.degree,
            coeffs,
        }
    }

    pub fn from_class_file(&self, file: &ClassFile) -> Result<CycleClass, DualityError> {
        let mut coeffs = vec![Int::ZERO; self.group_rank(file.degree)];
        for (s, j, v) in &file.coeffs {
            let c = self
                .coordinate(file.degree, *s, *j)
                .filter(|_| *j < self.rank)
                .ok_or_else(|| {
                    DualityError::Invalid(format!("no basis element ({s}, {j}) in degree {}", file.degree))
                })?;
            coeffs[c] = &coeffs[c] + v;
        }
        Ok(CycleClass {
            degree: file.degree,
            variance: self.variance,
            coeffs,
        })
    }
}

/// A degree-tagged vector in a twisted (co)chain group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleClass {
    pub degree: usize,
    pub variance: Variance,
    pub coeffs: Vec<Int>,
}

impl CycleClass {
    pub fn zero(tc: &TwistedComplex, degree: usize) -> Self {
        CycleClass {
            degree,
            variance: tc.variance,
            coeffs: vec![Int::ZERO; tc.group_rank(degree)],
        }
    }

    pub fn neg(&self) -> Self {
        CycleClass {
            degree: self.degree,
            variance: self.variance,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Int::is_zero)
    }
}

/// On-disk form of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFile {
    pub degree: usize,
    pub coeffs: Vec<(usize, usize, Int)>,
}

fn bases(pair: &SimplicialPair, relative: bool) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let x = &pair.total;
    let dim = x.dim();
    let mut basis = Vec::new();
    let mut position = Vec::new();
    for p in 0..=dim.max(-1) {
        let p = p as usize;
        let mut b = Vec::new();
        let mut pos = vec![ABSENT; x.count(p)];
        for (i, s) in x.simplices(p).iter().enumerate() {
            if !(relative && pair.sub.contains(s)) {
                pos[i] = b.len();
                b.push(i);
            }
        }
        basis.push(b);
        position.push(pos);
    }
    (basis, position)
}

/// Pushes `sign * T` (or `sign * I` when `t` is `None`) at block `(row, col)`.
fn push_block(
    out: &mut Vec<(usize, usize, Int)>,
    r: usize,
    row: usize,
    col: usize,
    t: Option<&SparseIntMatrix>,
    sign: i64,
) {
    match t {
        None => out.extend((0..r).map(|j| (row * r + j, col * r + j, Int::from(sign)))),
        Some(m) => out.extend(
            m.entries()
                .iter()
                .map(|(a, b, v)| (row * r + a, col * r + b, if sign < 0 { -v } else { v.clone() })),
        ),
    }
}

fn face_index(pair: &SimplicialPair, s: &Simplex, i: usize) -> usize {
    let p = s.dim();
    pair.total
        .index_of(&s.face(i))
        .unwrap_or_else(|| panic!("face of a simplex in degree {p} is missing"))
}

fn build(pair: &SimplicialPair, sys: &EdgeSystem, relative: bool, variance: Variance) -> TwistedComplex {
    let (basis, position) = bases(pair, relative);
    let r = sys.rank();
    let dim = pair.total.dim();
    let top = dim.max(0) as usize;
    let ranks: Vec<usize> = (0..=top).map(|p| basis.get(p).map_or(0, |b| b.len()) * r).collect();
    let x = &pair.total;
    // matrices of ∂_p : C_p → C_{p-1}, p = 1..=top
    let chain_bd: Vec<SparseIntMatrix> = (1..=top)
        .into_par_iter()
        .map(|p| {
            let mut trips = Vec::new();
            for (col, &si) in basis[p].iter().enumerate() {
                let s = &x.simplices(p)[si];
                let v = s.vertices();
                for i in 0..=p {
                    let Some(row) = position[p - 1]
                        .get(face_index(pair, s, i))
                        .copied()
                        .filter(|&k| k != ABSENT)
                    else {
                        continue;
                    };
                    match (variance, i) {
                        (Variance::Chain, 0) => push_block(&mut trips, r, row, col, sys.transport(v[0], v[1]), 1),
                        (Variance::Cochain, 0) => push_block(&mut trips, r, col, row, sys.transport(v[1], v[0]), 1),
                        (Variance::Chain, _) => {
                            push_block(&mut trips, r, row, col, None, if i % 2 == 0 { 1 } else { -1 })
                        }
                        (Variance::Cochain, _) => {
                            push_block(&mut trips, r, col, row, None, if i % 2 == 0 { 1 } else { -1 })
                        }
                    }
                }
            }
            match variance {
                Variance::Chain => SparseIntMatrix::from_triplets(ranks[p - 1], ranks[p], trips),
                Variance::Cochain => SparseIntMatrix::from_triplets(ranks[p], ranks[p - 1], trips),
            }
        })
        .collect();
    let realized = match variance {
        Variance::Chain => {
            let mut bds = vec![SparseIntMatrix::zeros(0, ranks[0])];
            bds.extend(chain_bd);
            ChainComplexZ::new(0, ranks.clone(), bds)
        }
        Variance::Cochain => {
            // realized degree -p holds C^p; its differential is δ^p : C^p → C^{p+1}
            let mut bds = vec![SparseIntMatrix::zeros(0, ranks[top])];
            for p in (0..top).rev() {
                bds.push(chain_bd[p].clone());
            }
            let rks: Vec<usize> = (0..=top).rev().map(|p| ranks[p]).collect();
            ChainComplexZ::new(-(top as i64), rks, bds)
        }
    }
    .expect("twisted differential squares to zero");
    TwistedComplex {
        variance,
        relative,
        rank: r,
        dim,
        basis,
        position,
        realized,
    }
}

/// `C_•(X, Y; B)` when `relative`, otherwise `C_•(X; B)`.
pub fn twisted_chain_complex(pair: &SimplicialPair, sys: &EdgeSystem, relative: bool) -> TwistedComplex {
    build(pair, sys, relative, Variance::Chain)
}

/// `C^•(X, Y; B)` when `relative`, otherwise `C^•(X; B)`.
pub fn twisted_cochain_complex(pair: &SimplicialPair, sys: &EdgeSystem, relative: bool) -> TwistedComplex {
    build(pair, sys, relative, Variance::Cochain)
}

/// Chain complex for a local system given on a presentation of the total space.
pub fn twisted_complex(
    pair: &SimplicialPair,
    pres: &GroupPresentation,
    system: &LocalSystem,
    relative: bool,
    variance: Variance,
) -> Result<TwistedComplex, DualityError> {
    let sys = system.edge_system(pres)?;
    if pres.edges.len() != pair.total.count(1) {
        return Err(DualityError::Group(crate::error::GroupError::PresentationMismatch(
            "presentation belongs to a different complex".into(),
        )));
    }
    Ok(build(pair, &sys, relative, variance))
}
