use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::int::Int;
use crate::error::LinalgError;

/// Integer matrix in coordinate form, entries sorted row-major.
///
/// Zero entries are never stored and coordinates are unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Int)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, Int::ONE)).collect();
        SparseIntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Builds a matrix from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut acc: BTreeMap<(usize, usize), Int> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            if v.is_zero() {
                continue;
            }
            acc.entry((r, c)).and_modify(|e| *e += &v).or_insert(v);
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn from_dense(dense: &[Vec<Int>], cols: usize) -> Self {
        let rows = dense.len();
        let mut entries = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect();
        Self::from_dense(&dense, cols)
    }

    /// Assembles a matrix from sparse rows whose column indices are sorted.
    pub fn from_sorted_rows(cols: usize, rows: Vec<Vec<(usize, Int)>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::new();
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                debug_assert!(c < cols);
                if !v.is_zero() {
                    entries.push((r, c, v));
                }
            }
        }
        SparseIntMatrix { rows: n, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Int)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        match self.entries.binary_search_by(|(er, ec, _)| (*er, *ec).cmp(&(r, c))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut d = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub fn row_lists(&self) -> Vec<Vec<(usize, Int)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn col_lists(&self) -> Vec<Vec<(usize, Int)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            out[*c].push((*r, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|(r, c, v)| (*r, *c, -v)).collect();
        SparseIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(r, c, v)| (*r, *c, v * k)).collect();
        SparseIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        let all = self.entries.iter().cloned().chain(other.entries.iter().cloned());
        Ok(Self::from_triplets(self.rows, self.cols, all))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.neg())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let right = other.row_lists();
        let mut out_rows: Vec<Vec<(usize, Int)>> = Vec::with_capacity(self.rows);
        let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
        let mut i = 0;
        for r in 0..self.rows {
            acc.clear();
            while i < self.entries.len() && self.entries[i].0 == r {
                let (_, k, a) = &self.entries[i];
                for (c, b) in &right[*k] {
                    let slot = acc.entry(*c).or_insert(Int::ZERO);
                    *slot = slot.add_mul(a, b);
                }
                i += 1;
            }
            out_rows.push(
                std::mem::take(&mut acc)
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(Self::from_sorted_rows(other.cols, out_rows))
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut y = vec![Int::ZERO; self.rows];
        for (r, c, v) in &self.entries {
            if !x[*c].is_zero() {
                y[*r] = y[*r].add_mul(v, &x[*c]);
            }
        }
        y
    }

    /// Block matrix from a grid of optional blocks (`None` is a zero block).
    pub fn block(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&SparseIntMatrix>>]) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut triplets = Vec::new();
        let mut r0 = 0;
        for (bi, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, cs) in col_sizes.iter().enumerate() {
                if let Some(m) = blocks[bi][bj] {
                    assert_eq!(m.shape(), (*rs, *cs), "block ({bi},{bj}) has wrong shape");
                    triplets.extend(m.entries.iter().map(|(r, c, v)| (r + r0, c + c0, v.clone())));
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Self::from_triplets(rows, cols, triplets)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = other.shape();
        let mut triplets = Vec::with_capacity(self.nnz() * other.nnz());
        for (r, c, a) in &self.entries {
            for (r2, c2, b) in &other.entries {
                triplets.push((r * p + r2, c * q + c2, a * b));
            }
        }
        Self::from_triplets(self.rows * p, self.cols * q, triplets)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(r, c, v)| r == c && v.is_one())
    }

    /// Coordinate text: `rows cols nnz` then one `r c v` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn from_coordinate_text(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, msg: &str| LinalgError::Parse {
            line: line + 1,
            message: msg.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(hl, "header must be `rows cols nnz`"))?;
        if h.len() != 3 {
            return Err(parse_err(hl, "header must be `rows cols nnz`"));
        }
        let (rows, cols, nnz) = (h[0], h[1], h[2]);
        let mut triplets = Vec::with_capacity(nnz);
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(parse_err(ln, "entry must be `r c v`"));
            }
            let r: usize = t[0].parse().map_err(|_| parse_err(ln, "bad row index"))?;
            let c: usize = t[1].parse().map_err(|_| parse_err(ln, "bad column index"))?;
            let v: Int = t[2].parse().map_err(|_| parse_err(ln, "bad value"))?;
            if r >= rows || c >= cols {
                return Err(parse_err(ln, "index out of range"));
            }
            triplets.push((r, c, v));
        }
        if triplets.len() != nnz {
            return Err(parse_err(0, "entry count does not match header"));
        }
        Ok(Self::from_triplets(rows, cols, triplets))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zero() {
        let m = SparseIntMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, Int::from(2)), (0, 0, Int::from(-2)), (1, 0, Int::from(3))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), Int::from(3));
    }

    #[test]
    fn multiplication_matches_dense() {
        let a = SparseIntMatrix::from_i64_rows(&[&[1, 2, 0], &[0, -1, 3]]);
        let b = SparseIntMatrix::from_i64_rows(&[&[1, 0], &[2, 1], &[0, 4]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, SparseIntMatrix::from_i64_rows(&[&[5, 2], &[-2, 11]]));
    }

    #[test]
    fn coordinate_text_round_trip() {
        let a = SparseIntMatrix::from_i64_rows(&[&[0, 7], &[-1, 0]]);
        let t = a.to_coordinate_text();
        assert_eq!(SparseIntMatrix::from_coordinate_text(&t).unwrap(), a);
        assert!(SparseIntMatrix::from_coordinate_text("2 2 1\n5 0 1\n").is_err());
    }

    #[test]
    fn kron_shape() {
        let a = SparseIntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&SparseIntMatrix::identity(3));
        assert_eq!(k.shape(), (6, 6));
        assert_eq!(k.get(0, 3), Int::ONE);
    }
}
