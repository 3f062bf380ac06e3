//! Finite ordered simplicial complexes, pairs, triads and simplicial maps.

mod construct;
mod io;
mod library;
mod manifold;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::linalg::{ChainComplexZ, Int, SparseIntMatrix};

pub use construct::{
    boundary_sphere, cone, double, double_triad, glue, is_full_subcomplex, product, product_pair, puncture, shuffles,
    simplex, Gluing, Shuffle,
};
pub use io::{parse_complex_file, ComplexFile};
pub use library::{circle, klein_bottle, mobius_band, poincare_sphere, real_projective_plane, rp3, torus};
pub use manifold::{link, manifold_boundary, manifold_dimension};

/// Strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and deduplicates the given vertices.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    /// Wraps vertices that are already strictly increasing.
    pub fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    /// The face opposite the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Vertices `i..=j` as a simplex.
    pub fn slice(&self, i: usize, j: usize) -> Simplex {
        Simplex(self.0[i..=j].to_vec())
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..(1u64 << n)).map(move |mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Result of [`validate`]: violations are empty for a valid complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub valid: bool,
    pub dimension: i64,
    pub simplex_count: usize,
    pub violations: Vec<String>,
}

/// Checks ordering, range, duplicates and face-closure of a raw simplex list.
pub fn validate(vertex_count: usize, simplices: &[Vec<usize>]) -> Diagnostics {
    let mut violations = Vec::new();
    let mut seen: HashSet<&[usize]> = HashSet::new();
    let mut dimension = -1i64;
    for s in simplices {
        if s.is_empty() {
            violations.push("empty simplex".to_string());
            continue;
        }
        if !s.windows(2).all(|w| w[0] < w[1]) {
            violations.push(format!("simplex {s:?} is not strictly increasing"));
        }
        if let Some(v) = s.iter().find(|&&v| v >= vertex_count) {
            violations.push(format!("vertex {v} out of range in {s:?}"));
        }
        if !seen.insert(s.as_slice()) {
            violations.push(format!("duplicate simplex {s:?}"));
        }
        dimension = dimension.max(s.len() as i64 - 1);
    }
    let mut missing = BTreeSet::new();
    for s in simplices {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            if !seen.contains(f.as_slice()) {
                missing.insert(f);
            }
        }
    }
    for f in missing {
        violations.push(format!("face {f:?} absent"));
    }
    let mut sorted = simplices.to_vec();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if sorted != simplices {
        violations.push("simplices not in canonical order (by dimension, then lexicographic)".to_string());
    }
    Diagnostics {
        valid: violations.is_empty(),
        dimension,
        simplex_count: simplices.len(),
        violations,
    }
}

/// A finite simplicial complex on vertex ids `0..vertex_count`.
///
/// Vertex ids need not all be used; the 0-simplices list the actual vertices.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    pub fn empty(vertex_count: usize) -> Self {
        SimplicialComplex {
            vertex_count,
            simplices: Vec::new(),
            index: Vec::new(),
        }
    }

    /// Closes the facets under taking faces.
    pub fn from_facets<I, S>(vertex_count: usize, facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = S>,
        S: Into<Vec<usize>>,
    {
        let mut all: HashSet<Simplex> = HashSet::new();
        let mut bad = Vec::new();
        for f in facets {
            let raw: Vec<usize> = f.into();
            if raw.is_empty() {
                continue;
            }
            let s = Simplex::new(raw.clone());
            if s.0.len() != raw.len() {
                bad.push(format!("repeated vertex in {raw:?}"));
                continue;
            }
            if let Some(v) = s.0.iter().find(|&&v| v >= vertex_count) {
                bad.push(format!("vertex {v} out of range in {raw:?}"));
                continue;
            }
            if all.contains(&s) {
                continue;
            }
            for face in s.all_faces() {
                all.insert(face);
            }
        }
        if !bad.is_empty() {
            return Err(ComplexError::Invalid(bad));
        }
        Ok(Self::from_closed_set(vertex_count, all))
    }

    /// Builds from an explicit simplex list, which must already be face-closed.
    pub fn from_simplices(vertex_count: usize, simplices: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut sorted = simplices;
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let diag = validate(vertex_count, &sorted);
        if !diag.valid {
            return Err(ComplexError::Invalid(diag.violations));
        }
        Ok(Self::from_closed_set(
            vertex_count,
            sorted.into_iter().map(Simplex).collect(),
        ))
    }

    fn from_closed_set(vertex_count: usize, all: HashSet<Simplex>) -> Self {
        let dim = all.iter().map(|s| s.0.len()).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); dim];
        for s in all {
            let d = s.0.len() - 1;
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort_unstable();
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex {
            vertex_count,
            simplices,
            index,
        }
    }

    /// Same simplices, larger vertex id space.
    pub fn with_vertex_count(&self, vertex_count: usize) -> Self {
        assert!(vertex_count >= self.vertex_count);
        let mut c = self.clone();
        c.vertex_count = vertex_count;
        c
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, or −1 when empty.
    pub fn dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s.0[0]).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Every simplex in canonical order, as raw vertex lists.
    pub fn all_simplices(&self) -> Vec<Vec<usize>> {
        self.simplices.iter().flatten().map(|s| s.0.clone()).collect()
    }

    /// Maximal simplices in lexicographic order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&Simplex> = HashSet::new();
        let mut out = Vec::new();
        for d in (0..self.simplices.len()).rev() {
            for s in &self.simplices[d] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if d > 0 {
                for s in &self.simplices[d] {
                    for i in 0..=d {
                        if let Some(j) = self.index[d - 1].get(&s.face(i)) {
                            covered.insert(&self.simplices[d - 1][*j]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.dim() as i64 == d)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().flatten().all(|s| other.contains(s))
    }

    pub fn diagnostics(&self) -> Diagnostics {
        validate(self.vertex_count, &self.all_simplices())
    }

    /// Matrix of `d_p` with columns indexed by `p`-simplices.
    pub fn boundary_matrix(&self, p: usize) -> Result<SparseIntMatrix, ComplexError> {
        if self.is_empty() || p as i64 > self.dim() {
            return Err(ComplexError::DegreeOutOfRange {
                degree: p,
                dim: self.dim(),
            });
        }
        if p == 0 {
            return Ok(SparseIntMatrix::zeros(0, self.count(0)));
        }
        Ok(self.relative_boundary(p, None))
    }

    fn relative_boundary(&self, p: usize, sub: Option<&SimplicialComplex>) -> SparseIntMatrix {
        let (cols, _) = self.relative_basis(p, sub);
        let (rows, row_of) = self.relative_basis(p - 1, sub);
        let mut t = Vec::new();
        for (j, &si) in cols.iter().enumerate() {
            let s = &self.simplices[p][si];
            for i in 0..=p {
                let f = s.face(i);
                let fi = self.index[p - 1][&f];
                if let Some(r) = row_of[fi] {
                    t.push((r, j, Int::from(if i % 2 == 0 { 1 } else { -1 })));
                }
            }
        }
        SparseIntMatrix::from_triplets(rows.len(), cols.len(), t)
    }

    /// Indices of `p`-simplices not in `sub`, and the inverse lookup.
    pub fn relative_basis(&self, p: usize, sub: Option<&SimplicialComplex>) -> (Vec<usize>, Vec<Option<usize>>) {
        let level = self.simplices(p);
        let mut basis = Vec::new();
        let mut pos = vec![None; level.len()];
        for (i, s) in level.iter().enumerate() {
            if sub.is_some_and(|y| y.contains(s)) {
                continue;
            }
            pos[i] = Some(basis.len());
            basis.push(i);
        }
        (basis, pos)
    }

    /// Simplicial chain complex over the integers in degrees `[0, dim]`.
    pub fn chain_complex(&self) -> ChainComplexZ {
        relative_chain_complex(self, None)
    }

    /// Vertex sets of path components, each sorted, ordered by least vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let mut parent: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            let mut y = x;
            while p[&y] != r {
                let next = p[&y];
                p.insert(y, r);
                y = next;
            }
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e.0[0]), find(&mut parent, e.0[1]));
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &v in &verts {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// The full subcomplex on the given vertices.
    pub fn induced(&self, vertices: &[usize]) -> SimplicialComplex {
        let keep: HashSet<usize> = vertices.iter().copied().collect();
        self.filter(|s| s.0.iter().all(|v| keep.contains(v)))
    }

    /// Subcomplex of simplices satisfying a face-closed predicate.
    pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> SimplicialComplex {
        let set: HashSet<Simplex> = self.simplices.iter().flatten().filter(|s| keep(s)).cloned().collect();
        SimplicialComplex::from_closed_set(self.vertex_count, set)
    }

    /// Path components as subcomplexes.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        self.component_vertex_sets().iter().map(|vs| self.induced(vs)).collect()
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.vertex_count.max(other.vertex_count);
        let set: HashSet<Simplex> = self
            .simplices
            .iter()
            .chain(other.simplices.iter())
            .flatten()
            .cloned()
            .collect();
        SimplicialComplex::from_closed_set(n, set)
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        self.filter(|s| other.contains(s))
    }

    /// Relabels vertices densely in increasing order, returning the old ids.
    pub fn compacted(&self) -> (SimplicialComplex, Vec<usize>) {
        let old = self.vertices();
        let mut new_id = vec![usize::MAX; self.vertex_count];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let set = self
            .simplices
            .iter()
            .flatten()
            .map(|s| Simplex::from_sorted(s.0.iter().map(|v| new_id[*v]).collect()))
            .collect();
        (SimplicialComplex::from_closed_set(old.len(), set), old)
    }
}

/// `C(X, Y)` with basis the simplices of `X` outside `Y`, window `[0, dim X]`.
pub fn relative_chain_complex(x: &SimplicialComplex, y: Option<&SimplicialComplex>) -> ChainComplexZ {
    if x.is_empty() {
        return ChainComplexZ::new(0, vec![0], vec![SparseIntMatrix::zeros(0, 0)]).expect("zero complex");
    }
    let dim = x.dim() as usize;
    let mut ranks = Vec::new();
    let mut bds = Vec::new();
    for p in 0..=dim {
        let (basis, _) = x.relative_basis(p, y);
        ranks.push(basis.len());
        if p == 0 {
            bds.push(SparseIntMatrix::zeros(0, basis.len()));
        } else {
            bds.push(x.relative_boundary(p, y));
        }
    }
    ChainComplexZ::new(0, ranks, bds).expect("simplicial boundary squares to zero")
}

/// A complex with a distinguished (possibly empty) subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    pub total: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(total: SimplicialComplex, sub: SimplicialComplex) -> Result<Self, ComplexError> {
        if !sub.is_subcomplex_of(&total) {
            return Err(ComplexError::Invalid(vec!["sub is not a subcomplex of total".into()]));
        }
        let sub = if sub.vertex_count() == total.vertex_count() {
            sub
        } else if sub.vertex_count() < total.vertex_count() {
            sub.with_vertex_count(total.vertex_count())
        } else {
            return Err(ComplexError::Invalid(vec!["sub has more vertex ids than total".into()]));
        };
        Ok(SimplicialPair { total, sub })
    }

    /// `(X, ∅)`.
    pub fn absolute(total: SimplicialComplex) -> Self {
        let sub = SimplicialComplex::empty(total.vertex_count());
        SimplicialPair { total, sub }
    }

    pub fn chain_complex(&self) -> ChainComplexZ {
        relative_chain_complex(&self.total, Some(&self.sub))
    }

    pub fn dim(&self) -> i64 {
        self.total.dim()
    }
}

/// `(X; Y₁, Y₂)` with both pieces subcomplexes of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialTriad {
    pub total: SimplicialComplex,
    pub sub1: SimplicialComplex,
    pub sub2: SimplicialComplex,
}

impl SimplicialTriad {
    pub fn new(
        total: SimplicialComplex,
        sub1: SimplicialComplex,
        sub2: SimplicialComplex,
    ) -> Result<Self, ComplexError> {
        let n = total.vertex_count();
        for s in [&sub1, &sub2] {
            if !s.is_subcomplex_of(&total) || s.vertex_count() > n {
                return Err(ComplexError::Invalid(vec!["triad piece is not a subcomplex".into()]));
            }
        }
        let sub1 = sub1.with_vertex_count(n);
        let sub2 = sub2.with_vertex_count(n);
        Ok(SimplicialTriad { total, sub1, sub2 })
    }

    /// `Y₀ = Y₁ ∩ Y₂`.
    pub fn corner(&self) -> SimplicialComplex {
        self.sub1.intersection(&self.sub2)
    }

    pub fn boundary(&self) -> SimplicialComplex {
        self.sub1.union(&self.sub2)
    }
}

/// A vertex map that sends simplices of `domain` to simplices of `codomain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub domain: SimplicialComplex,
    pub codomain: SimplicialComplex,
    pub vertex_images: Vec<usize>,
}

impl SimplicialMap {
    /// `vertex_images[v]` is the image of vertex id `v`; unused ids are ignored.
    pub fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_images: Vec<usize>,
    ) -> Result<Self, ComplexError> {
        if vertex_images.len() < domain.vertex_count() {
            return Err(ComplexError::NotSimplicial("vertex map too short".into()));
        }
        let m = SimplicialMap {
            domain,
            codomain,
            vertex_images,
        };
        for level in &m.domain.simplices {
            for s in level {
                let img = m.image(s);
                if !m.codomain.contains(&img) {
                    return Err(ComplexError::NotSimplicial(format!("{s} maps to {img}, not a simplex")));
                }
            }
        }
        Ok(m)
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.0.iter().map(|v| self.vertex_images[*v]).collect())
    }

    /// Bijective on vertices and on simplices of every dimension.
    pub fn is_isomorphism(&self) -> bool {
        let dv = self.domain.vertices();
        let images: HashSet<usize> = dv.iter().map(|v| self.vertex_images[*v]).collect();
        if images.len() != dv.len() || self.domain.f_vector() != self.codomain.f_vector() {
            return false;
        }
        self.domain
            .simplices
            .iter()
            .flatten()
            .all(|s| self.image(s).dim() == s.dim())
    }

    pub fn compose(&self, g: &SimplicialMap) -> Result<SimplicialMap, ComplexError> {
        let imgs = (0..self.domain.vertex_count())
            .map(|v| {
                let w = self.vertex_images[v];
                if w < g.vertex_images.len() {
                    g.vertex_images[w]
                } else {
                    0
                }
            })
            .collect();
        SimplicialMap::new(self.domain.clone(), g.codomain.clone(), imgs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_reports_missing_faces() {
        let d = validate(3, &[vec![0, 1], vec![1, 2]]);
        assert!(!d.valid);
        assert!(d.violations.iter().any(|v| v == "face [1] absent"));
    }

    #[test]
    fn boundary_of_edge() {
        let c = simplex(1);
        let d = c.boundary_matrix(1).unwrap();
        assert_eq!(d, SparseIntMatrix::from_i64_rows(&[&[-1], &[1]]));
        assert!(c.boundary_matrix(2).is_err());
    }

    #[test]
    fn facets_of_sphere() {
        let s = boundary_sphere(3);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.f_vector(), vec![4, 6, 4]);
    }
}
