//! Local coefficient systems as monodromy along edges.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::coset::CosetTable;
use super::presentation::{generator_of, GroupPresentation};
use super::tietze::simplify;
use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::GroupError;
use crate::linalg::{smith_form, Int, SparseIntMatrix};

/// Inverse of a matrix over the integers, if it has one.
pub fn unimodular_inverse(a: &SparseIntMatrix) -> Option<SparseIntMatrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let t = a.transpose();
    if a.mul(&t).ok()?.is_identity() {
        return Some(t);
    }
    let snf = smith_form(a);
    if snf.rank() != a.rows() || !snf.diagonal().iter().all(Int::is_one) {
        return None;
    }
    snf.v().mul(&snf.u()).ok()
}

/// Transport data attached to edges of a complex.
///
/// `forward(a, b)` for an edge `a < b` carries a coefficient at `a` to one at
/// `b`; edges absent from the map carry the identity.
#[derive(Clone, Debug)]
pub struct EdgeSystem {
    rank: usize,
    transports: HashMap<(usize, usize), Arc<(SparseIntMatrix, SparseIntMatrix)>>,
    label: String,
}

impl EdgeSystem {
    pub fn trivial(rank: usize) -> Self {
        EdgeSystem {
            rank,
            transports: HashMap::new(),
            label: if rank == 1 {
                "trivial".into()
            } else {
                format!("trivial^{rank}")
            },
        }
    }

    /// Builds from explicit forward matrices on edges `a < b`.
    pub fn from_edges(
        rank: usize,
        edges: impl IntoIterator<Item = ((usize, usize), SparseIntMatrix)>,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        let mut transports = HashMap::new();
        for (k, (e, m)) in edges.into_iter().enumerate() {
            if m.shape() != (rank, rank) {
                return Err(GroupError::NotUnimodular(k));
            }
            if m.is_identity() {
                continue;
            }
            let inv = unimodular_inverse(&m).ok_or(GroupError::NotUnimodular(k))?;
            transports.insert((e.0.min(e.1), e.0.max(e.1)), Arc::new((m, inv)));
        }
        Ok(EdgeSystem {
            rank,
            transports,
            label: label.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.transports.is_empty()
    }

    /// Transport from `a` to `b` along the edge `{a, b}`; `None` means identity.
    pub fn transport(&self, a: usize, b: usize) -> Option<&SparseIntMatrix> {
        if a < b {
            self.transports.get(&(a, b)).map(|t| &t.0)
        } else {
            self.transports.get(&(b, a)).map(|t| &t.1)
        }
    }

    pub fn transport_or_identity(&self, a: usize, b: usize) -> SparseIntMatrix {
        self.transport(a, b)
            .cloned()
            .unwrap_or_else(|| SparseIntMatrix::identity(self.rank))
    }

    /// Monodromy along a closed or open vertex path, composed in path order.
    pub fn along_path(&self, path: &[usize]) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::identity(self.rank);
        for p in path.windows(2) {
            if let Some(t) = self.transport(p[0], p[1]) {
                m = t.mul(&m).expect("square");
            }
        }
        m
    }

    /// `self ⊗ other`, with the factor of `self` first in the Kronecker order.
    pub fn tensor(&self, other: &EdgeSystem) -> EdgeSystem {
        let mut keys: Vec<(usize, usize)> = self.transports.keys().chain(other.transports.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let transports = keys
            .into_iter()
            .map(|(a, b)| {
                let f = self
                    .transport_or_identity(a, b)
                    .kron(&other.transport_or_identity(a, b));
                let i = self
                    .transport_or_identity(b, a)
                    .kron(&other.transport_or_identity(b, a));
                ((a, b), Arc::new((f, i)))
            })
            .filter(|(_, t)| !t.0.is_identity())
            .collect();
        EdgeSystem {
            rank: self.rank * other.rank,
            transports,
            label: format!("{}⊗{}", self.label, other.label),
        }
    }

    /// Pullback along a vertex map; `f` is applied to both ends of each edge of `domain`.
    pub fn pullback(&self, map: &SimplicialMap) -> EdgeSystem {
        let transports = map
            .domain
            .simplices(1)
            .iter()
            .filter_map(|e| {
                let (u, v) = (e.vertices()[0], e.vertices()[1]);
                let (a, b) = (map.vertex_images[u], map.vertex_images[v]);
                if a == b {
                    return None;
                }
                let f = self.transport(a, b)?.clone();
                let i = self.transport(b, a).cloned().expect("inverse stored");
                Some(((u, v), Arc::new((f, i))))
            })
            .collect();
        EdgeSystem {
            rank: self.rank,
            transports,
            label: self.label.clone(),
        }
    }

    /// External product on `product(a, b)`, whose vertex `(x, y)` is `x * nb + y`.
    pub fn product(&self, other: &EdgeSystem, product_complex: &SimplicialComplex, nb: usize) -> EdgeSystem {
        let transports = product_complex
            .simplices(1)
            .iter()
            .filter_map(|e| {
                let (u, v) = (e.vertices()[0], e.vertices()[1]);
                let (a1, b1, a2, b2) = (u / nb, u % nb, v / nb, v % nb);
                let fa = if a1 == a2 { None } else { self.transport(a1, a2) };
                let fb = if b1 == b2 { None } else { other.transport(b1, b2) };
                if fa.is_none() && fb.is_none() {
                    return None;
                }
                let ia = if a1 == a2 { None } else { self.transport(a2, a1) };
                let ib = if b1 == b2 { None } else { other.transport(b2, b1) };
                let id_a = SparseIntMatrix::identity(self.rank);
                let id_b = SparseIntMatrix::identity(other.rank);
                let f = fa.unwrap_or(&id_a).kron(fb.unwrap_or(&id_b));
                let i = ia.unwrap_or(&id_a).kron(ib.unwrap_or(&id_b));
                Some(((u, v), Arc::new((f, i))))
            })
            .collect();
        EdgeSystem {
            rank: self.rank * other.rank,
            transports,
            label: format!("{}×{}", self.label, other.label),
        }
    }

    /// Checks that monodromy around every triangle of `complex` is trivial.
    pub fn check_flat(&self, complex: &SimplicialComplex) -> Result<(), GroupError> {
        for (i, t) in complex.simplices(2).iter().enumerate() {
            let v = t.vertices();
            if !self.along_path(&[v[0], v[1], v[2], v[0]]).is_identity() {
                return Err(GroupError::RelatorViolated(i));
            }
        }
        Ok(())
    }
}

/// A representation of the edge-path group: one invertible matrix per
/// generator, acting as transport along the generator's edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    pub rank: usize,
    pub generators: Vec<SparseIntMatrix>,
    pub presentation_hash: String,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
struct LocalSystemFile {
    rank: usize,
    generators: Vec<Vec<Vec<Int>>>,
    presentation_hash: String,
}

impl LocalSystem {
    /// Validates unimodularity and the relator identities.
    pub fn new(
        pres: &GroupPresentation,
        rank: usize,
        generators: Vec<SparseIntMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        if generators.len() != pres.generator_count {
            return Err(GroupError::PresentationMismatch(format!(
                "{} matrices for {} generators",
                generators.len(),
                pres.generator_count
            )));
        }
        let mut inverses = Vec::with_capacity(generators.len());
        for (g, m) in generators.iter().enumerate() {
            if m.shape() != (rank, rank) {
                return Err(GroupError::NotUnimodular(g));
            }
            inverses.push(unimodular_inverse(m).ok_or(GroupError::NotUnimodular(g))?);
        }
        let s = LocalSystem {
            rank,
            generators,
            presentation_hash: pres.hash(),
            label: label.into(),
        };
        for (i, w) in pres.relators.iter().enumerate() {
            let mut m = SparseIntMatrix::identity(rank);
            for &l in w {
                let g = generator_of(l);
                let t = if l > 0 { &s.generators[g] } else { &inverses[g] };
                m = t.mul(&m)?;
            }
            if !m.is_identity() {
                return Err(GroupError::RelatorViolated(i));
            }
        }
        Ok(s)
    }

    pub fn trivial(pres: &GroupPresentation, rank: usize) -> Self {
        LocalSystem {
            rank,
            generators: vec![SparseIntMatrix::identity(rank); pres.generator_count],
            presentation_hash: pres.hash(),
            label: "trivial".into(),
        }
    }

    /// Rank-one system with the given signs on the generators.
    pub fn from_signs(pres: &GroupPresentation, signs: &[i64], label: impl Into<String>) -> Result<Self, GroupError> {
        let gens = signs.iter().map(|&s| SparseIntMatrix::from_i64_rows(&[&[s]])).collect();
        Self::new(pres, 1, gens, label)
    }

    /// Signs of a rank-one system with values in `{±1}`.
    pub fn signs(&self) -> Option<Vec<i64>> {
        if self.rank != 1 {
            return None;
        }
        self.generators
            .iter()
            .map(|m| match m.get(0, 0).to_i64() {
                Some(s @ (1 | -1)) => Some(s),
                _ => None,
            })
            .collect()
    }

    pub fn check_presentation(&self, pres: &GroupPresentation) -> Result<(), GroupError> {
        if self.presentation_hash != pres.hash() || self.generators.len() != pres.generator_count {
            return Err(GroupError::PresentationMismatch("hash differs".into()));
        }
        Ok(())
    }

    /// Transport data on the edges of the presentation's complex.
    pub fn edge_system(&self, pres: &GroupPresentation) -> Result<EdgeSystem, GroupError> {
        self.check_presentation(pres)?;
        let edges = pres
            .edges
            .iter()
            .filter_map(|&(a, b, g)| g.map(|g| ((a, b), self.generators[g].clone())));
        Ok(EdgeSystem::from_edges(self.rank, edges, self.label.clone())?)
    }

    pub fn to_json(&self) -> String {
        let f = LocalSystemFile {
            rank: self.rank,
            generators: self.generators.iter().map(|m| m.to_dense()).collect(),
            presentation_hash: self.presentation_hash.clone(),
        };
        serde_json::to_string_pretty(&f).expect("serializes")
    }

    pub fn from_json(text: &str, pres: &GroupPresentation) -> Result<Self, GroupError> {
        let f: LocalSystemFile = serde_json::from_str(text)
            .map_err(|e| GroupError::PresentationMismatch(format!("local system file: {e}")))?;
        if f.presentation_hash != pres.hash() {
            return Err(GroupError::PresentationMismatch("presentation hash differs".into()));
        }
        let gens = f
            .generators
            .iter()
            .map(|rows| SparseIntMatrix::from_dense(rows, f.rank))
            .collect();
        Self::new(pres, f.rank, gens, "file")
    }
}

/// The permutation representation on the cosets of a table: `P_g e_s = e_{s·g}`.
pub fn permutation_system(pres: &GroupPresentation, table: &CosetTable) -> Result<LocalSystem, GroupError> {
    table.validate(pres)?;
    let d = table.degree;
    let gens = table
        .action
        .iter()
        .map(|p| SparseIntMatrix::from_triplets(d, d, p.iter().enumerate().map(|(s, &t)| (t, s, Int::ONE))))
        .collect();
    let label = if d == 1 {
        "trivial".to_string()
    } else {
        format!("permutation({d})")
    };
    Ok(LocalSystem {
        rank: d,
        generators: gens,
        presentation_hash: pres.hash(),
        label,
    })
}

/// Every homomorphism from the edge-path group to `{±1}`, trivial first.
///
/// Characters are read off the kernel of the mod-2 exponent-sum matrix of a
/// simplified presentation. At most `2^12` systems are produced.
pub fn orientation_systems(pres: &GroupPresentation) -> Vec<LocalSystem> {
    let simp = simplify(pres);
    let k = simp.generator_count;
    let rows: Vec<Vec<bool>> = simp
        .relators
        .iter()
        .map(|w| {
            let mut r = vec![false; k];
            for &l in w {
                r[generator_of(l)] ^= true;
            }
            r
        })
        .collect();
    let basis = f2_nullspace(&rows, k);
    let count = 1usize << basis.len().min(12);
    (0..count)
        .map(|mask| {
            let mut x = vec![false; k];
            for (i, v) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for j in 0..k {
                        x[j] ^= v[j];
                    }
                }
            }
            let signs = simp.extend(&x, false, |a, b| a ^ b, |a| *a);
            let signs: Vec<i64> = signs.iter().map(|&b| if b { -1 } else { 1 }).collect();
            let label = if mask == 0 {
                "trivial".to_string()
            } else {
                format!("sign#{mask}")
            };
            LocalSystem::from_signs(pres, &signs, label).expect("characters respect relators")
        })
        .collect()
}

/// Basis of `{x : R x = 0}` over the field with two elements.
fn f2_nullspace(rows: &[Vec<bool>], k: usize) -> Vec<Vec<bool>> {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] {
                let (a, b) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&mut hi[0], &lo[r])
                };
                for j in 0..k {
                    a[j] ^= b[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![false; k];
            x[f] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = m[i][f];
            }
            x
        })
        .collect()
}
