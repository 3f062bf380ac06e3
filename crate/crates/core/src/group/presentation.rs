//! Edge-path presentations of the fundamental group of a connected complex.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::SimplicialComplex;
use crate::error::GroupError;
use crate::linalg::{invariant_factors, HomologyGroup, Int, SparseIntMatrix};

/// A word in the generators: letter `g + 1` is generator `g`, `-(g + 1)` its inverse.
pub type Word = Vec<i32>;

pub fn letter(g: usize, inverse: bool) -> i32 {
    let l = g as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn invert_word(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse letters at the two ends.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let w = free_reduce(w);
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == -w[j - 1] {
        i += 1;
        j -= 1;
    }
    w[i..j].to_vec()
}

/// Evaluates `w` in a group given by `values`, multiplying letters left to right.
pub fn evaluate_word<T: Clone>(w: &[i32], values: &[T], inverses: &[T], identity: &T, mul: &impl Fn(&T, &T) -> T) -> T {
    let mut acc = identity.clone();
    for &l in w {
        let g = generator_of(l);
        let v = if l > 0 { &values[g] } else { &inverses[g] };
        acc = mul(&acc, v);
    }
    acc
}

/// Presentation read off a spanning tree: one generator per non-tree edge,
/// one relator per triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    pub basepoint: usize,
    /// Every edge `(a, b)` with `a < b` and its generator, `None` on the tree.
    pub edges: Vec<(usize, usize, Option<usize>)>,
}

impl GroupPresentation {
    /// Generator carried by the edge `{a, b}`, `Some(None)` for tree edges.
    pub fn edge_generator(&self, a: usize, b: usize) -> Option<Option<usize>> {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.0, e.1).cmp(&key))
            .ok()
            .map(|i| self.edges[i].2)
    }

    /// The word read along an edge path given by its vertices.
    pub fn path_word(&self, path: &[usize]) -> Result<Word, GroupError> {
        let mut w = Vec::new();
        for p in path.windows(2) {
            let g = self
                .edge_generator(p[0], p[1])
                .ok_or_else(|| GroupError::InvalidWord(format!("no edge {{{}, {}}}", p[0], p[1])))?;
            if let Some(g) = g {
                w.push(letter(g, p[0] > p[1]));
            }
        }
        Ok(free_reduce(&w))
    }

    pub fn validate_word(&self, w: &[i32]) -> Result<(), GroupError> {
        match w.iter().find(|&&l| l == 0 || generator_of(l) >= self.generator_count) {
            Some(l) => Err(GroupError::InvalidWord(format!("letter {l}"))),
            None => Ok(()),
        }
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn abelianization_matrix(&self) -> SparseIntMatrix {
        let trips = self.relators.iter().enumerate().flat_map(|(r, w)| {
            w.iter()
                .map(move |&l| (r, generator_of(l), Int::from(if l > 0 { 1i64 } else { -1 })))
        });
        SparseIntMatrix::from_triplets(self.relators.len(), self.generator_count, trips)
    }

    pub fn abelianization(&self) -> HomologyGroup {
        let f = invariant_factors(&self.abelianization_matrix());
        HomologyGroup::new(self.generator_count - f.len(), f)
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("presentation serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Edge-path presentation of a connected complex based at `basepoint`.
///
/// The spanning tree is grown breadth first, visiting neighbours in
/// increasing order; non-tree edges are numbered in canonical edge order.
pub fn presentation(complex: &SimplicialComplex, basepoint: usize) -> Result<GroupPresentation, GroupError> {
    let n = complex.vertex_count();
    if !complex.contains(&crate::complex::Simplex::new(vec![basepoint])) {
        return Err(GroupError::InvalidWord(format!(
            "basepoint {basepoint} is not a vertex"
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for e in complex.simplices(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut tree = std::collections::HashSet::new();
    let mut queue = VecDeque::from([basepoint]);
    seen[basepoint] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                tree.insert((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    if reached != complex.count(0) {
        return Err(GroupError::Disconnected);
    }
    let mut edges = Vec::with_capacity(complex.count(1));
    let mut next = 0;
    for e in complex.simplices(1) {
        let key = (e.vertices()[0], e.vertices()[1]);
        if tree.contains(&key) {
            edges.push((key.0, key.1, None));
        } else {
            edges.push((key.0, key.1, Some(next)));
            next += 1;
        }
    }
    let mut pres = GroupPresentation {
        generator_count: next,
        relators: Vec::new(),
        basepoint,
        edges,
    };
    let relators = complex
        .simplices(2)
        .iter()
        .map(|t| {
            let v = t.vertices();
            pres.path_word(&[v[0], v[1], v[2], v[0]]).expect("triangle edges exist")
        })
        .collect();
    pres.relators = relators;
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_sphere, simplex};

    #[test]
    fn triangle_presents_the_trivial_group() {
        let p = presentation(&simplex(2), 0).unwrap();
        assert_eq!(p.generator_count, 1);
        assert_eq!(p.relators, vec![vec![1]]);
        let s = crate::group::simplify(&p);
        assert_eq!(s.generator_count, 0);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn circle_is_free_of_rank_one() {
        let p = presentation(&boundary_sphere(2), 0).unwrap();
        assert_eq!(p.generator_count, 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.edge_generator(2, 1), Some(Some(0)));
        assert_eq!(p.abelianization(), HomologyGroup::free(1));
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(invert_word(&[1, -2]), vec![2, -1]);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let c = SimplicialComplex::from_facets(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(presentation(&c, 0), Err(GroupError::Disconnected));
    }
}
