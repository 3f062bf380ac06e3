//! Smith normal form over the integers.
//!
//! Elimination works in place: pivots are chosen anywhere in the matrix and
//! gathered onto the diagonal by a final permutation, after which a gcd/lcm
//! pass enforces the divisibility chain. Every unimodular step can be logged
//! so that `U`, `V` and their inverses are materialized only when asked for.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::sparse::SparseIntMatrix;

/// Below this many rows and columns the dense engine is used.
pub const DENSE_CUTOFF: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub u: SparseIntMatrix,
    pub d: SparseIntMatrix,
    pub v: SparseIntMatrix,
}

/// One unimodular operation on rows (or, symmetrically, on columns).
#[derive(Clone, Debug)]
enum Op {
    /// `line[t] += k * line[s]`
    Add {
        t: usize,
        s: usize,
        k: Int,
    },
    Neg(usize),
    /// `(line[i], line[j]) <- (a*line[i] + b*line[j], c*line[i] + d*line[j])`, determinant 1.
    Combine {
        i: usize,
        j: usize,
        m: [Int; 4],
    },
    /// `new line[k] = old line[p[k]]`
    Perm(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Auto,
    Dense,
    Sparse,
}

/// Full decomposition `U A V = D` with lazily built transforms.
#[derive(Clone, Debug)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    diagonal: Vec<Int>,
    row_ops: Vec<Op>,
    col_ops: Vec<Op>,
}

impl SmithForm {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Nonzero diagonal entries, positive, each dividing the next.
    pub fn diagonal(&self) -> &[Int] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn d(&self) -> SparseIntMatrix {
        let t = self.diagonal.iter().enumerate().map(|(i, v)| (i, i, v.clone()));
        SparseIntMatrix::from_triplets(self.rows, self.cols, t)
    }

    pub fn u(&self) -> SparseIntMatrix {
        let mut s = LineStore::identity(self.rows);
        for op in &self.row_ops {
            s.forward(op);
        }
        s.as_rows(self.rows)
    }

    pub fn u_inv(&self) -> SparseIntMatrix {
        let mut s = LineStore::identity(self.rows);
        for op in &self.row_ops {
            s.inverse(op);
        }
        s.as_cols(self.rows)
    }

    pub fn v(&self) -> SparseIntMatrix {
        let mut s = LineStore::identity(self.cols);
        for op in &self.col_ops {
            s.forward(op);
        }
        s.as_cols(self.cols)
    }

    pub fn v_inv(&self) -> SparseIntMatrix {
        let mut s = LineStore::identity(self.cols);
        for op in &self.col_ops {
            s.inverse(op);
        }
        s.as_rows(self.cols)
    }

    pub fn result(&self) -> SnfResult {
        SnfResult {
            u: self.u(),
            d: self.d(),
            v: self.v(),
        }
    }
}

/// Computes `U A V = D`. In debug builds the identity is re-verified by exact multiplication.
pub fn smith_normal_form(a: &SparseIntMatrix) -> SnfResult {
    let form = smith_form(a);
    let res = form.result();
    if cfg!(debug_assertions) {
        let check = res.u.mul(a).and_then(|ua| ua.mul(&res.v)).expect("shapes agree");
        assert_eq!(check, res.d, "SNF postcondition violated");
    }
    res
}

pub fn smith_form(a: &SparseIntMatrix) -> SmithForm {
    smith_form_with(a, Engine::Auto)
}

pub fn smith_form_with(a: &SparseIntMatrix, engine: Engine) -> SmithForm {
    let mut log = OpLog::recording();
    let pivots = eliminate(a, engine, &mut log);
    finish(a.rows(), a.cols(), pivots, log)
}

/// Nonzero invariant factors (including units), without recording transforms.
pub fn invariant_factors(a: &SparseIntMatrix) -> Vec<Int> {
    invariant_factors_with(a, Engine::Auto)
}

pub fn invariant_factors_with(a: &SparseIntMatrix, engine: Engine) -> Vec<Int> {
    let mut log = OpLog::silent();
    let pivots = eliminate(a, engine, &mut log);
    normalize_diagonal(pivots.into_iter().map(|(_, _, p)| p.abs()).collect(), &mut log)
}

pub fn rank(a: &SparseIntMatrix) -> usize {
    let mut log = OpLog::silent();
    eliminate(a, Engine::Auto, &mut log).len()
}

fn eliminate(a: &SparseIntMatrix, engine: Engine, log: &mut OpLog) -> Vec<(usize, usize, Int)> {
    let dense = match engine {
        Engine::Dense => true,
        Engine::Sparse => false,
        Engine::Auto => a.rows() < DENSE_CUTOFF && a.cols() < DENSE_CUTOFF,
    };
    if dense {
        DenseEliminator::new(a).run(log)
    } else {
        SparseEliminator::new(a).run(log)
    }
}

fn finish(rows: usize, cols: usize, pivots: Vec<(usize, usize, Int)>, mut log: OpLog) -> SmithForm {
    let k = pivots.len();
    let row_perm = gather_perm(rows, pivots.iter().map(|p| p.0));
    let col_perm = gather_perm(cols, pivots.iter().map(|p| p.1));
    log.row(Op::Perm(row_perm));
    log.col(Op::Perm(col_perm));
    let mut diag = Vec::with_capacity(k);
    for (i, (_, _, p)) in pivots.into_iter().enumerate() {
        if p.is_negative() {
            log.row(Op::Neg(i));
        }
        diag.push(p.abs());
    }
    let diagonal = normalize_diagonal(diag, &mut log);
    let (row_ops, col_ops) = log.into_parts();
    SmithForm {
        rows,
        cols,
        diagonal,
        row_ops,
        col_ops,
    }
}

fn gather_perm(n: usize, first: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut used = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for i in first {
        used[i] = true;
        perm.push(i);
    }
    perm.extend((0..n).filter(|i| !used[*i]));
    perm
}

/// Turns a positive diagonal into invariant factors via 2x2 gcd/lcm moves.
fn normalize_diagonal(mut d: Vec<Int>, log: &mut OpLog) -> Vec<Int> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].divides(&d[j]) {
                continue;
            }
            let (a, b) = (d[i].clone(), d[j].clone());
            let (g, s, t) = a.extended_gcd(&b);
            let bg = b.div_exact(&g);
            let ag = a.div_exact(&g);
            if log.enabled() {
                log.row(Op::Combine {
                    i,
                    j,
                    m: [s.clone(), t.clone(), -&bg, ag.clone()],
                });
                log.col(Op::Combine {
                    i,
                    j,
                    m: [Int::ONE, Int::ONE, -&(&t * &bg), &s * &ag],
                });
            }
            d[j] = &a * &bg;
            d[i] = g;
        }
    }
    d
}

struct OpLog {
    on: bool,
    rows: Vec<Op>,
    cols: Vec<Op>,
}

impl OpLog {
    fn recording() -> Self {
        OpLog {
            on: true,
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    fn silent() -> Self {
        OpLog {
            on: false,
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    fn enabled(&self) -> bool {
        self.on
    }

    fn row(&mut self, op: Op) {
        if self.on {
            self.rows.push(op);
        }
    }

    fn col(&mut self, op: Op) {
        if self.on {
            self.cols.push(op);
        }
    }

    fn into_parts(self) -> (Vec<Op>, Vec<Op>) {
        (self.rows, self.cols)
    }
}

type SparseVec = Vec<(usize, Int)>;

/// `a + k*b` for sorted sparse vectors.
fn axpy(a: &SparseVec, k: &Int, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, k * &b[j].1));
            j += 1;
        } else {
            let v = a[i].1.add_mul(k, &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn combo(x: &Int, a: &SparseVec, y: &Int, b: &SparseVec) -> SparseVec {
    let scaled: SparseVec = if x.is_zero() {
        Vec::new()
    } else {
        a.iter().map(|(c, v)| (*c, v * x)).collect()
    };
    axpy(&scaled, y, b)
}

/// A family of sparse lines (rows or columns) tracking a transform.
struct LineStore {
    lines: Vec<SparseVec>,
}

impl LineStore {
    fn identity(n: usize) -> Self {
        LineStore {
            lines: (0..n).map(|i| vec![(i, Int::ONE)]).collect(),
        }
    }

    fn forward(&mut self, op: &Op) {
        match op {
            Op::Add { t, s, k } => self.lines[*t] = axpy(&self.lines[*t], k, &self.lines[*s]),
            Op::Neg(i) => self.neg(*i),
            Op::Combine { i, j, m } => self.combine(*i, *j, m),
            Op::Perm(p) => self.permute(p),
        }
    }

    /// Applies the transpose of the inverse, which is what the inverse matrix sees.
    fn inverse(&mut self, op: &Op) {
        match op {
            Op::Add { t, s, k } => self.lines[*s] = axpy(&self.lines[*s], &-k, &self.lines[*t]),
            Op::Neg(i) => self.neg(*i),
            Op::Combine { i, j, m } => {
                let inv = [m[3].clone(), -&m[2], -&m[1], m[0].clone()];
                self.combine(*i, *j, &inv)
            }
            Op::Perm(p) => self.permute(p),
        }
    }

    fn neg(&mut self, i: usize) {
        for e in &mut self.lines[i] {
            e.1 = -&e.1;
        }
    }

    fn combine(&mut self, i: usize, j: usize, m: &[Int; 4]) {
        let (li, lj) = (&self.lines[i], &self.lines[j]);
        let ni = combo(&m[0], li, &m[1], lj);
        let nj = combo(&m[2], li, &m[3], lj);
        self.lines[i] = ni;
        self.lines[j] = nj;
    }

    fn permute(&mut self, p: &[usize]) {
        let old = std::mem::take(&mut self.lines);
        let mut slots: Vec<Option<SparseVec>> = old.into_iter().map(Some).collect();
        self.lines = p.iter().map(|&k| slots[k].take().expect("permutation")).collect();
    }

    fn as_rows(self, cols: usize) -> SparseIntMatrix {
        SparseIntMatrix::from_sorted_rows(cols, self.lines)
    }

    fn as_cols(self, rows: usize) -> SparseIntMatrix {
        let n = self.lines.len();
        let t = self
            .lines
            .into_iter()
            .enumerate()
            .flat_map(|(c, line)| line.into_iter().map(move |(r, v)| (r, c, v)));
        SparseIntMatrix::from_triplets(rows, n, t)
    }
}

/// Pivot priority: smallest magnitude, then fewest nonzeros in row and column, then position.
type PivotKey = Reverse<(Int, usize, usize, usize)>;

struct SparseEliminator {
    rows: Vec<SparseVec>,
    col_rows: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    heap: BinaryHeap<PivotKey>,
}

impl SparseEliminator {
    fn new(a: &SparseIntMatrix) -> Self {
        let rows = a.row_lists();
        let mut col_rows = vec![BTreeSet::new(); a.cols()];
        for (r, c, _) in a.entries() {
            col_rows[*c].insert(*r);
        }
        let mut e = SparseEliminator {
            rows,
            col_rows,
            row_alive: vec![true; a.rows()],
            col_alive: vec![true; a.cols()],
            heap: BinaryHeap::new(),
        };
        for r in 0..e.rows.len() {
            e.push_row(r);
        }
        e
    }

    /// Markowitz cost: fill-in caused by pivoting at `(r, c)`.
    fn weight(&self, r: usize, c: usize) -> usize {
        (self.rows[r].len() - 1) * (self.col_rows[c].len() - 1)
    }

    fn push(&mut self, r: usize, c: usize) {
        if let Some(v) = self.entry(r, c) {
            let key = Reverse((v.abs(), self.weight(r, c), r, c));
            self.heap.push(key);
        }
    }

    fn push_row(&mut self, r: usize) {
        for idx in 0..self.rows[r].len() {
            let c = self.rows[r][idx].0;
            self.push(r, c);
        }
    }

    /// A column that just became a singleton offers a fill-free pivot.
    fn column_shrunk(&mut self, c: usize) {
        if self.col_rows[c].len() == 1 {
            let r = *self.col_rows[c].iter().next().expect("one entry");
            self.push(r, c);
        }
    }

    fn entry(&self, r: usize, c: usize) -> Option<&Int> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|i| &row[i].1)
    }

    fn row_add(&mut self, t: usize, s: usize, k: &Int, log: &mut OpLog) {
        let old = std::mem::take(&mut self.rows[t]);
        let new = axpy(&old, k, &self.rows[s]);
        let mut shrunk = Vec::new();
        {
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                let co = old.get(i).map_or(usize::MAX, |e| e.0);
                let cn = new.get(j).map_or(usize::MAX, |e| e.0);
                if co < cn {
                    self.col_rows[co].remove(&t);
                    shrunk.push(co);
                    i += 1;
                } else if cn < co {
                    self.col_rows[cn].insert(t);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
        }
        self.rows[t] = new;
        let changed: Vec<usize> = self.rows[s]
            .iter()
            .map(|e| e.0)
            .filter(|c| self.entry(t, *c).is_some())
            .collect();
        for c in changed {
            self.push(t, c);
        }
        if self.rows[t].len() == 1 {
            self.push_row(t);
        }
        for c in shrunk {
            self.column_shrunk(c);
        }
        log.row(Op::Add { t, s, k: k.clone() });
    }

    /// Column op when column `s` is zero outside row `r`: only `(r, t)` changes.
    fn col_add_single(&mut self, r: usize, t: usize, s: usize, k: &Int, log: &mut OpLog) {
        let ps = self.entry(r, s).cloned().expect("pivot present");
        let row = &mut self.rows[r];
        let idx = row.binary_search_by_key(&t, |e| e.0).expect("entry present");
        let v = row[idx].1.add_mul(k, &ps);
        if v.is_zero() {
            row.remove(idx);
            self.col_rows[t].remove(&r);
            self.column_shrunk(t);
        } else {
            row[idx].1 = v;
            self.push(r, t);
        }
        log.col(Op::Add { t, s, k: k.clone() });
    }

    fn run(mut self, log: &mut OpLog) -> Vec<(usize, usize, Int)> {
        let mut pivots = Vec::new();
        while let Some(Reverse((abs, w, r, c))) = self.heap.pop() {
            if !self.row_alive[r] || !self.col_alive[c] {
                continue;
            }
            let Some(v) = self.entry(r, c) else { continue };
            let cur = v.abs();
            let cw = self.weight(r, c);
            if cur != abs || cw != w {
                self.heap.push(Reverse((cur, cw, r, c)));
                continue;
            }
            pivots.push(self.pivot(r, c, log));
        }
        pivots
    }

    fn pivot(&mut self, mut r: usize, mut c: usize, log: &mut OpLog) -> (usize, usize, Int) {
        loop {
            let p = self.entry(r, c).cloned().expect("pivot");
            let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&x| x != r).collect();
            let mut best: Option<(Int, usize)> = None;
            for r2 in others {
                let a = self.entry(r2, c).cloned().expect("column entry");
                let (q, rem) = a.div_rem_euclid(&p);
                if !q.is_zero() {
                    self.row_add(r2, r, &-q, log);
                }
                if !rem.is_zero() && best.as_ref().is_none_or(|(b, _)| rem < *b) {
                    best = Some((rem, r2));
                }
            }
            if let Some((_, r2)) = best {
                r = r2;
                continue;
            }
            let others: Vec<(usize, Int)> = self.rows[r].iter().filter(|e| e.0 != c).cloned().collect();
            let mut best: Option<(Int, usize)> = None;
            for (c2, a) in others {
                let (q, rem) = a.div_rem_euclid(&p);
                if !q.is_zero() {
                    self.col_add_single(r, c2, c, &-q, log);
                }
                if !rem.is_zero() && best.as_ref().is_none_or(|(b, _)| rem < *b) {
                    best = Some((rem, c2));
                }
            }
            if let Some((_, c2)) = best {
                c = c2;
                continue;
            }
            self.col_rows[c].remove(&r);
            self.rows[r].clear();
            self.row_alive[r] = false;
            self.col_alive[c] = false;
            return (r, c, p);
        }
    }
}

struct DenseEliminator {
    a: Vec<Vec<Int>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl DenseEliminator {
    fn new(m: &SparseIntMatrix) -> Self {
        DenseEliminator {
            a: m.to_dense(),
            row_alive: vec![true; m.rows()],
            col_alive: vec![true; m.cols()],
        }
    }

    fn choose(&self) -> Option<(usize, usize)> {
        let nr = self.a.len();
        let nc = self.col_alive.len();
        let row_nnz: Vec<usize> = self
            .a
            .iter()
            .map(|row| row.iter().filter(|v| !v.is_zero()).count())
            .collect();
        let col_nnz: Vec<usize> = (0..nc)
            .map(|c| (0..nr).filter(|&r| !self.a[r][c].is_zero()).count())
            .collect();
        let mut best: Option<(Int, usize, usize, usize)> = None;
        for r in (0..nr).filter(|&r| self.row_alive[r]) {
            for c in (0..nc).filter(|&c| self.col_alive[c]) {
                let v = &self.a[r][c];
                if v.is_zero() {
                    continue;
                }
                let key = (v.abs(), row_nnz[r] + col_nnz[c], r, c);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn row_add(&mut self, t: usize, s: usize, k: &Int, log: &mut OpLog) {
        for c in 0..self.col_alive.len() {
            if !self.a[s][c].is_zero() {
                self.a[t][c] = self.a[t][c].add_mul(k, &self.a[s][c]);
            }
        }
        log.row(Op::Add { t, s, k: k.clone() });
    }

    fn col_add(&mut self, t: usize, s: usize, k: &Int, log: &mut OpLog) {
        for row in self.a.iter_mut() {
            if !row[s].is_zero() {
                row[t] = row[t].add_mul(k, &row[s]);
            }
        }
        log.col(Op::Add { t, s, k: k.clone() });
    }

    fn run(mut self, log: &mut OpLog) -> Vec<(usize, usize, Int)> {
        let mut pivots = Vec::new();
        while let Some((r0, c0)) = self.choose() {
            let (mut r, mut c) = (r0, c0);
            loop {
                let p = self.a[r][c].clone();
                let mut best: Option<(Int, usize)> = None;
                for r2 in 0..self.a.len() {
                    if r2 == r || self.a[r2][c].is_zero() {
                        continue;
                    }
                    let (q, rem) = self.a[r2][c].div_rem_euclid(&p);
                    if !q.is_zero() {
                        self.row_add(r2, r, &-q, log);
                    }
                    if !rem.is_zero() && best.as_ref().is_none_or(|(b, _)| rem < *b) {
                        best = Some((rem, r2));
                    }
                }
                if let Some((_, r2)) = best {
                    r = r2;
                    continue;
                }
                let mut best: Option<(Int, usize)> = None;
                for c2 in 0..self.col_alive.len() {
                    if c2 == c || self.a[r][c2].is_zero() {
                        continue;
                    }
                    let (q, rem) = self.a[r][c2].div_rem_euclid(&p);
                    if !q.is_zero() {
                        self.col_add(c2, c, &-q, log);
                    }
                    if !rem.is_zero() && best.as_ref().is_none_or(|(b, _)| rem < *b) {
                        best = Some((rem, c2));
                    }
                }
                if let Some((_, c2)) = best {
                    c = c2;
                    continue;
                }
                break;
            }
            pivots.push((r, c, self.a[r][c].clone()));
            self.row_alive[r] = false;
            self.col_alive[c] = false;
        }
        pivots
    }
}
