//! Tietze simplification of edge-path presentations.
//!
//! Short relators are first absorbed by a union-find pass (`g = 1`,
//! `g = h^±1`); afterwards generators occurring exactly once in a short
//! relator are eliminated, shortest relators first, while the total relator
//! length stays bounded. The substitutions are kept so that any
//! representation of the simplified group extends to the original generators.

use std::collections::BTreeSet;

use super::presentation::{cyclic_reduce, evaluate_word, free_reduce, generator_of, invert_word, letter, Word};
use super::GroupPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplifiedPresentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    original_count: usize,
    /// Original generator id of each surviving generator.
    survivors: Vec<usize>,
    /// `(g, w)`: generator `g` equals `w`, a word in original ids. Evaluated in reverse.
    definitions: Vec<(usize, Word)>,
}

impl SimplifiedPresentation {
    pub fn original_count(&self) -> usize {
        self.original_count
    }

    /// Extends values on the simplified generators to all original generators.
    ///
    /// `mul(a, b)` multiplies in word order, so a word `x y` evaluates to `mul(x, y)`.
    pub fn extend<T: Clone>(
        &self,
        values: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> Vec<T> {
        assert_eq!(values.len(), self.generator_count);
        let mut vals: Vec<T> = vec![identity.clone(); self.original_count];
        let mut invs: Vec<T> = vec![identity.clone(); self.original_count];
        for (i, &g) in self.survivors.iter().enumerate() {
            vals[g] = values[i].clone();
            invs[g] = inv(&values[i]);
        }
        for (g, w) in self.definitions.iter().rev() {
            let v = evaluate_word(w, &vals, &invs, &identity, &mul);
            invs[*g] = inv(&v);
            vals[*g] = v;
        }
        vals
    }

    /// Rewrites a word in the original generators into the simplified ones.
    pub fn rewrite(&self, w: &[i32]) -> Word {
        let letters: Vec<Word> = (0..self.generator_count).map(|i| vec![letter(i, false)]).collect();
        let images = self.extend(
            &letters,
            Vec::new(),
            |a, b| free_reduce(&[a.as_slice(), b.as_slice()].concat()),
            |a| invert_word(a),
        );
        let pieces: Vec<i32> = w
            .iter()
            .flat_map(|&l| {
                let img = &images[generator_of(l)];
                if l > 0 {
                    img.clone()
                } else {
                    invert_word(img)
                }
            })
            .collect();
        free_reduce(&pieces)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    /// Whether a generator equals the inverse of its parent.
    flip: Vec<bool>,
    trivial: Vec<bool>,
}

impl UnionFind {
    fn find(&mut self, g: usize) -> (usize, bool) {
        let p = self.parent[g];
        if p == g {
            return (g, false);
        }
        let (r, f) = self.find(p);
        self.parent[g] = r;
        self.flip[g] ^= f;
        (r, self.flip[g])
    }

    /// Image of a letter as a root letter, or `None` when it is trivial.
    fn image(&mut self, l: i32) -> Option<i32> {
        let (r, f) = self.find(generator_of(l));
        if self.trivial[r] {
            None
        } else {
            Some(letter(r, (l < 0) ^ f))
        }
    }
}

const MAX_ELIMINATION_LENGTH: usize = 32;

pub fn simplify(pres: &GroupPresentation) -> SimplifiedPresentation {
    let n = pres.generator_count;
    let mut uf = UnionFind {
        parent: (0..n).collect(),
        flip: vec![false; n],
        trivial: vec![false; n],
    };
    let mut rels: Vec<Word> = pres
        .relators
        .iter()
        .map(|w| cyclic_reduce(w))
        .filter(|w| !w.is_empty())
        .collect();
    loop {
        let mut changed = false;
        for w in rels.iter_mut() {
            let img: Word = w.iter().filter_map(|&l| uf.image(l)).collect();
            *w = cyclic_reduce(&img);
            match w.len() {
                1 => {
                    let (r, _) = uf.find(generator_of(w[0]));
                    uf.trivial[r] = true;
                    changed = true;
                }
                2 if generator_of(w[0]) != generator_of(w[1]) => {
                    // x y = 1, so x = y^-1
                    let (x, y) = (w[0], w[1]);
                    let (gx, gy) = (generator_of(x), generator_of(y));
                    uf.parent[gx] = gy;
                    uf.flip[gx] = (x < 0) == (y < 0);
                    uf.trivial[gy] |= uf.trivial[gx];
                    changed = true;
                }
                _ => {}
            }
        }
        rels.retain(|w| w.len() > 1);
        if !changed {
            break;
        }
    }
    let mut definitions = Vec::new();
    let mut alive = vec![false; n];
    for g in 0..n {
        let (r, f) = uf.find(g);
        if uf.trivial[r] {
            definitions.push((g, Vec::new()));
        } else if r != g {
            definitions.push((g, vec![letter(r, f)]));
        } else {
            alive[g] = true;
        }
    }
    let rels: Vec<Word> = rels
        .into_iter()
        .map(|w| cyclic_reduce(&w.iter().filter_map(|&l| uf.image(l)).collect::<Vec<_>>()))
        .filter(|w| !w.is_empty())
        .collect();
    let mut elim = Eliminator::new(n, rels, alive);
    elim.run(&mut definitions);
    finish(pres.generator_count, elim, definitions)
}

struct Eliminator {
    rels: Vec<Option<Word>>,
    occ: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    pending: BTreeSet<(usize, usize)>,
    total_length: usize,
}

impl Eliminator {
    fn new(n: usize, rels: Vec<Word>, alive: Vec<bool>) -> Self {
        let mut occ = vec![BTreeSet::new(); n];
        let mut pending = BTreeSet::new();
        let mut total_length = 0;
        for (i, w) in rels.iter().enumerate() {
            for &l in w {
                occ[generator_of(l)].insert(i);
            }
            pending.insert((w.len(), i));
            total_length += w.len();
        }
        Eliminator {
            rels: rels.into_iter().map(Some).collect(),
            occ,
            alive,
            pending,
            total_length,
        }
    }

    fn run(&mut self, definitions: &mut Vec<(usize, Word)>) {
        let budget = 4 * self.total_length + 1000;
        while let Some((r, g)) = self.candidate() {
            if self.total_length > budget {
                break;
            }
            definitions.push((g, self.eliminate(r, g)));
        }
    }

    /// Shortest pending relator with a generator occurring in it exactly once.
    fn candidate(&mut self) -> Option<(usize, usize)> {
        while let Some(&(len, r)) = self.pending.iter().next() {
            if len > MAX_ELIMINATION_LENGTH {
                return None;
            }
            self.pending.remove(&(len, r));
            let w = self.rels[r].as_ref().expect("pending relators are alive");
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for &l in w {
                let g = generator_of(l);
                match counts.iter_mut().find(|c| c.0 == g) {
                    Some(c) => c.1 += 1,
                    None => counts.push((g, 1)),
                }
            }
            let best = counts
                .iter()
                .filter(|c| c.1 == 1)
                .min_by_key(|c| (self.occ[c.0].len(), c.0))
                .map(|c| c.0);
            if let Some(g) = best {
                return Some((r, g));
            }
        }
        None
    }

    fn set_relator(&mut self, r: usize, w: Option<Word>) {
        if let Some(old) = self.rels[r].take() {
            self.pending.remove(&(old.len(), r));
            self.total_length -= old.len();
            for &l in &old {
                self.occ[generator_of(l)].remove(&r);
            }
        }
        if let Some(w) = w.filter(|w| !w.is_empty()) {
            for &l in &w {
                self.occ[generator_of(l)].insert(r);
            }
            self.total_length += w.len();
            self.pending.insert((w.len(), r));
            self.rels[r] = Some(w);
        }
    }

    /// Solves relator `r` for `g`, substitutes everywhere and returns the expression.
    fn eliminate(&mut self, r: usize, g: usize) -> Word {
        let w = self.rels[r].clone().expect("alive");
        let at = w.iter().position(|&l| generator_of(l) == g).expect("occurs");
        let rotated: Word = w[at..].iter().chain(&w[..at]).copied().collect();
        let rest = &rotated[1..];
        let expr = if rotated[0] > 0 {
            invert_word(rest)
        } else {
            rest.to_vec()
        };
        self.set_relator(r, None);
        self.alive[g] = false;
        let inv = invert_word(&expr);
        let users: Vec<usize> = self.occ[g].iter().copied().collect();
        for u in users {
            let old = self.rels[u].clone().expect("alive");
            let mut new = Vec::with_capacity(old.len() + expr.len());
            for &l in &old {
                if generator_of(l) == g {
                    new.extend_from_slice(if l > 0 { &expr } else { &inv });
                } else {
                    new.push(l);
                }
            }
            self.set_relator(u, Some(cyclic_reduce(&new)));
        }
        expr
    }
}

fn finish(original_count: usize, elim: Eliminator, definitions: Vec<(usize, Word)>) -> SimplifiedPresentation {
    let survivors: Vec<usize> = (0..original_count).filter(|&g| elim.alive[g]).collect();
    let mut index = vec![usize::MAX; original_count];
    for (i, &g) in survivors.iter().enumerate() {
        index[g] = i;
    }
    let mut relators: Vec<Word> = elim
        .rels
        .into_iter()
        .flatten()
        .map(|w| w.iter().map(|&l| letter(index[generator_of(l)], l < 0)).collect())
        .collect();
    relators.sort_by(|a: &Word, b: &Word| (a.len(), a).cmp(&(b.len(), b)));
    relators.dedup();
    SimplifiedPresentation {
        generator_count: survivors.len(),
        relators,
        original_count,
        survivors,
        definitions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_sphere, real_projective_plane};
    use crate::group::presentation;

    #[test]
    fn sphere_simplifies_to_trivial() {
        let p = presentation(&boundary_sphere(3), 0).unwrap();
        let s = simplify(&p);
        assert_eq!(s.generator_count, 0);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn projective_plane_simplifies_to_cyclic_of_order_two() {
        let p = presentation(&real_projective_plane(), 0).unwrap();
        let s = simplify(&p);
        assert_eq!(s.generator_count, 1);
        assert_eq!(s.relators.len(), 1);
        let w = &s.relators[0];
        assert_eq!(w.len(), 2);
        assert_eq!(w[0], w[1]);
    }

    #[test]
    fn extension_respects_relators() {
        // signs: RP² has a unique nontrivial character
        let p = presentation(&real_projective_plane(), 0).unwrap();
        let s = simplify(&p);
        let vals = s.extend(&[-1i64], 1, |a, b| a * b, |a| *a);
        for w in &p.relators {
            let v: i64 = w.iter().map(|&l| vals[generator_of(l)]).product();
            assert_eq!(v, 1);
        }
        assert!(vals.iter().any(|&v| v == -1));
    }
}
