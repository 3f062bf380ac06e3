//! Coset enumeration (HLT) and low-index subgroup search.

use serde::{Deserialize, Serialize};

use super::presentation::{generator_of, Word};
use super::tietze::{simplify, SimplifiedPresentation};
use super::GroupPresentation;
use crate::error::GroupError;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// Right action of the generators on the cosets of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub degree: usize,
    /// `action[g][s]` is the coset `s·g`.
    pub action: Vec<Vec<usize>>,
    pub complete: bool,
}

pub fn identity_perm(d: usize) -> Vec<usize> {
    (0..d).collect()
}

/// `a` followed by `b`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&s| b[s]).collect()
}

pub fn invert_perm(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (s, &t) in a.iter().enumerate() {
        out[t] = s;
    }
    out
}

impl CosetTable {
    /// Builds the table of the original presentation from permutations of the
    /// simplified generators, then checks relators and transitivity.
    pub fn from_simplified(
        pres: &GroupPresentation,
        simp: &SimplifiedPresentation,
        perms: &[Vec<usize>],
        degree: usize,
    ) -> Result<CosetTable, GroupError> {
        let action = simp.extend(
            perms,
            identity_perm(degree),
            |a, b| compose_perm(a, b),
            |a| invert_perm(a),
        );
        let t = CosetTable {
            degree,
            action,
            complete: true,
        };
        t.validate(pres)?;
        Ok(t)
    }

    /// The coset reached from `s` by reading `w` left to right.
    pub fn act(&self, s: usize, w: &[i32]) -> usize {
        w.iter().fold(s, |s, &l| {
            let p = &self.action[generator_of(l)];
            if l > 0 {
                p[s]
            } else {
                p.iter().position(|&t| t == s).expect("permutation")
            }
        })
    }

    /// Relators act trivially, every generator acts bijectively and the action is transitive.
    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), GroupError> {
        if !self.complete || self.action.len() != pres.generator_count {
            return Err(GroupError::IncompleteTable);
        }
        let inverses: Vec<Vec<usize>> = self
            .action
            .iter()
            .map(|p| {
                let mut seen = vec![false; self.degree];
                for &t in p {
                    if t >= self.degree || seen[t] {
                        return Err(GroupError::IncompleteTable);
                    }
                    seen[t] = true;
                }
                Ok(invert_perm(p))
            })
            .collect::<Result<_, _>>()?;
        for (i, w) in pres.relators.iter().enumerate() {
            for s in 0..self.degree {
                let e = w.iter().fold(s, |s, &l| {
                    let g = generator_of(l);
                    if l > 0 {
                        self.action[g][s]
                    } else {
                        inverses[g][s]
                    }
                });
                if e != s {
                    return Err(GroupError::RelatorViolated(i));
                }
            }
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for (p, q) in self.action.iter().zip(&inverses) {
                for t in [p[s], q[s]] {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        if seen.iter().all(|&b| b) {
            Ok(())
        } else {
            Err(GroupError::IncompleteTable)
        }
    }
}

fn column(l: i32) -> usize {
    2 * generator_of(l) + usize::from(l < 0)
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    rep: Vec<u32>,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.rep.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.rep[c as usize] == c
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.rep[r as usize] != r {
            r = self.rep[r as usize];
        }
        let mut c = c;
        while self.rep[c as usize] != r {
            let next = self.rep[c as usize];
            self.rep[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, GroupError> {
        if self.rows() >= self.max {
            return Err(GroupError::CosetLimit(self.max));
        }
        let d = self.rows() as u32;
        self.rep.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.find(k), self.find(l));
        if k != l {
            let (lo, hi) = (k.min(l), k.max(l));
            self.rep[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.find(e), self.find(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                    continue;
                }
                let fx = self.get(f1, x ^ 1);
                if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), GroupError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut i) = (c, 0isize);
        let (mut b, mut j) = (c, w.len() as isize - 1);
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// HLT enumeration over a simplified presentation; returns generator permutations.
pub fn enumerate_cosets(
    generator_count: usize,
    relators: &[Word],
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let cols = 2 * generator_count;
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|w| w.iter().map(|&l| column(l)).collect())
        .collect();
    let mut e = Enumerator {
        cols,
        table: vec![NONE; cols],
        rep: vec![0],
        max: max_cosets.max(1),
        queue: Vec::new(),
    };
    for h in subgroup {
        let h: Vec<usize> = h.iter().map(|&l| column(l)).collect();
        e.scan_and_fill(0, &h)?;
    }
    let mut c = 0u32;
    while (c as usize) < e.rows() {
        if e.alive(c) {
            for r in &rels {
                e.scan_and_fill(c, r)?;
                if !e.alive(c) {
                    break;
                }
            }
            if e.alive(c) {
                for x in 0..cols {
                    if e.get(c, x) == NONE {
                        e.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    let mut index = vec![usize::MAX; e.rows()];
    let mut d = 0;
    for c in 0..e.rows() {
        if e.alive(c as u32) {
            index[c] = d;
            d += 1;
        }
    }
    let mut perms = vec![vec![0; d]; generator_count];
    for c in 0..e.rows() as u32 {
        if !e.alive(c) {
            continue;
        }
        for (g, perm) in perms.iter_mut().enumerate() {
            let t = e.get(c, 2 * g);
            if t == NONE {
                return Err(GroupError::IncompleteTable);
            }
            perm[index[c as usize]] = index[e.find(t) as usize];
        }
    }
    Ok(perms)
}

/// Coset table of the subgroup generated by `subgroup` (words in the original generators).
pub fn todd_coxeter(pres: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, GroupError> {
    for w in subgroup {
        pres.validate_word(w)?;
    }
    let simp = simplify(pres);
    todd_coxeter_simplified(pres, &simp, subgroup, max_cosets)
}

pub fn todd_coxeter_simplified(
    pres: &GroupPresentation,
    simp: &SimplifiedPresentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, GroupError> {
    let sub: Vec<Word> = subgroup.iter().map(|w| simp.rewrite(w)).collect();
    let perms = enumerate_cosets(simp.generator_count, &simp.relators, &sub, max_cosets)?;
    let degree = perms.first().map_or(1, |p| p.len());
    CosetTable::from_simplified(pres, simp, &perms, degree)
}

struct LowIndex<'a> {
    cols: usize,
    rels: &'a [Vec<usize>],
    max_index: usize,
    node_limit: usize,
    nodes: usize,
    found: Vec<Vec<Vec<u32>>>,
}

impl LowIndex<'_> {
    /// Applies every deduction forced by the relators; `false` on contradiction.
    fn propagate(&self, t: &mut [Vec<u32>]) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.len() {
                for w in self.rels {
                    if w.is_empty() {
                        continue;
                    }
                    let (mut f, mut i) = (c as u32, 0isize);
                    let (mut b, mut j) = (c as u32, w.len() as isize - 1);
                    while i <= j && t[f as usize][w[i as usize]] != NONE {
                        f = t[f as usize][w[i as usize]];
                        i += 1;
                    }
                    if i > j {
                        if f != b {
                            return false;
                        }
                        continue;
                    }
                    while j >= i && t[b as usize][w[j as usize] ^ 1] != NONE {
                        b = t[b as usize][w[j as usize] ^ 1];
                        j -= 1;
                    }
                    if j < i {
                        if f != b {
                            return false;
                        }
                    } else if i == j {
                        let x = w[i as usize];
                        t[f as usize][x] = b;
                        t[b as usize][x ^ 1] = f;
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&mut self, mut t: Vec<Vec<u32>>) {
        if self.nodes >= self.node_limit {
            return;
        }
        self.nodes += 1;
        if !self.propagate(&mut t) {
            return;
        }
        let next = (0..t.len()).find_map(|c| (0..self.cols).find(|&x| t[c][x] == NONE).map(|x| (c, x)));
        let Some((c, x)) = next else {
            self.found.push(t);
            return;
        };
        for d in 0..t.len() {
            if t[d][x ^ 1] == NONE {
                let mut t2 = t.clone();
                t2[c][x] = d as u32;
                t2[d][x ^ 1] = c as u32;
                self.search(t2);
            }
        }
        if t.len() < self.max_index {
            let mut t2 = t.clone();
            let d = t2.len() as u32;
            t2.push(vec![NONE; self.cols]);
            t2[c][x] = d;
            t2[d as usize][x ^ 1] = c as u32;
            self.search(t2);
        }
    }
}

/// Outcome of a low-index search.
#[derive(Clone, Debug)]
pub struct LowIndexResult {
    /// Generator permutations of each subgroup found, ordered by discovery.
    pub tables: Vec<Vec<Vec<usize>>>,
    /// Whether the search tree was exhausted.
    pub exhaustive: bool,
}

/// All subgroups of index at most `max_index`, each once, as permutation
/// actions of the generators on cosets (coset 0 is the subgroup).
pub fn low_index_subgroups(
    generator_count: usize,
    relators: &[Word],
    max_index: usize,
    node_limit: usize,
) -> LowIndexResult {
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|w| w.iter().map(|&l| column(l)).collect())
        .collect();
    let cols = 2 * generator_count;
    let mut s = LowIndex {
        cols,
        rels: &rels,
        max_index: max_index.max(1),
        node_limit,
        nodes: 0,
        found: Vec::new(),
    };
    s.search(vec![vec![NONE; cols]]);
    let exhaustive = s.nodes < node_limit;
    let tables = s
        .found
        .into_iter()
        .map(|t| {
            (0..generator_count)
                .map(|g| t.iter().map(|row| row[2 * g] as usize).collect())
                .collect()
        })
        .collect();
    LowIndexResult { tables, exhaustive }
}

/// Transitive permutation representations of degree `2..=max_index` of the
/// presented group, as tables of the original presentation.
pub fn low_index_tables(
    pres: &GroupPresentation,
    simp: &SimplifiedPresentation,
    max_index: usize,
    node_limit: usize,
) -> (Vec<CosetTable>, bool) {
    let res = low_index_subgroups(simp.generator_count, &simp.relators, max_index, node_limit);
    let mut tables: Vec<CosetTable> = res
        .tables
        .iter()
        .filter_map(|perms| {
            let degree = perms.first().map_or(1, |p| p.len());
            if degree < 2 {
                return None;
            }
            CosetTable::from_simplified(pres, simp, perms, degree).ok()
        })
        .collect();
    tables.sort_by_key(|t| t.degree);
    (tables, res.exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_of_order_two() {
        let perms = enumerate_cosets(1, &[vec![1, 1]], &[], 100).unwrap();
        assert_eq!(perms, vec![vec![1, 0]]);
    }

    #[test]
    fn free_group_exceeds_cap() {
        assert_eq!(enumerate_cosets(1, &[], &[], 50), Err(GroupError::CosetLimit(50)));
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^3, (ab)^2>
        let rels = vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]];
        let perms = enumerate_cosets(2, &rels, &[], 1000).unwrap();
        assert_eq!(perms[0].len(), 6);
        let sub = enumerate_cosets(2, &rels, &[vec![1]], 1000).unwrap();
        assert_eq!(sub[0].len(), 3);
    }

    #[test]
    fn low_index_subgroups_of_s3() {
        let rels = vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]];
        let res = low_index_subgroups(2, &rels, 6, 100_000);
        assert!(res.exhaustive);
        let mut by_index = [0usize; 7];
        for t in &res.tables {
            by_index[t[0].len()] += 1;
        }
        // S3: one subgroup of index 1, one of index 2, three of index 3, one of index 6
        assert_eq!(by_index, [0, 1, 1, 3, 0, 0, 1]);
    }

    #[test]
    fn low_index_subgroups_of_z() {
        let res = low_index_subgroups(1, &[], 4, 10_000);
        assert_eq!(res.tables.len(), 4);
    }
}
