//! Finite covers of simplicial pairs and the transfer.

use super::coset::CosetTable;
use super::presentation::{presentation, GroupPresentation};
use super::system::EdgeSystem;
use crate::complex::{SimplicialComplex, SimplicialMap, SimplicialPair};
use crate::duality::{twisted_chain_complex, TwistedComplex};
use crate::error::GroupError;
use crate::linalg::{ChainMap, Int, SparseIntMatrix};

/// A `d`-sheeted cover; vertex `(v, s)` of the cover is numbered `v * d + s`.
#[derive(Clone, Debug)]
pub struct CoverPair {
    pub base: SimplicialPair,
    pub total_pair: SimplicialPair,
    pub sheet_count: usize,
    pub projection: SimplicialMap,
    pub presentation: GroupPresentation,
    pub table: CosetTable,
    /// `lifts[p][i * d + s]`: cover index of the lift of base `p`-simplex `i`
    /// whose minimal vertex lies on sheet `s`.
    lifts: Vec<Vec<usize>>,
}

impl CoverPair {
    pub fn lift_index(&self, p: usize, base_index: usize, sheet: usize) -> usize {
        self.lifts[p][base_index * self.sheet_count + sheet]
    }

    /// Sheet permutation along the edge `a → b` of the base.
    pub fn deck_transport(&self, a: usize, b: usize) -> Vec<usize> {
        let d = self.sheet_count;
        match self.presentation.edge_generator(a, b).flatten() {
            None => (0..d).collect(),
            Some(g) if a < b => self.table.action[g].clone(),
            Some(g) => super::coset::invert_perm(&self.table.action[g]),
        }
    }
}

/// Lifts of a base simplex starting on each sheet.
fn lift(pres: &GroupPresentation, table: &CosetTable, d: usize, v: &[usize], sheet: usize) -> Vec<usize> {
    v.iter()
        .map(|&w| {
            let s = match pres.edge_generator(v[0], w).flatten() {
                Some(g) if w != v[0] => table.action[g][sheet],
                _ => sheet,
            };
            w * d + s
        })
        .collect()
}

/// Cover of a connected pair determined by a coset table of the default
/// presentation (based at the smallest vertex).
pub fn build_cover(pair: &SimplicialPair, table: &CosetTable) -> Result<CoverPair, GroupError> {
    let base_vertex = *pair.total.vertices().first().ok_or(GroupError::Disconnected)?;
    let pres = presentation(&pair.total, base_vertex)?;
    build_cover_with(pair, &pres, table)
}

pub fn build_cover_with(
    pair: &SimplicialPair,
    pres: &GroupPresentation,
    table: &CosetTable,
) -> Result<CoverPair, GroupError> {
    table.validate(pres)?;
    if pres.edges.len() != pair.total.count(1) {
        return Err(GroupError::PresentationMismatch(
            "presentation belongs to a different complex".into(),
        ));
    }
    let d = table.degree;
    let n = pair.total.vertex_count() * d;
    let lift_all = |k: &SimplicialComplex| -> Vec<Vec<usize>> {
        k.facets()
            .iter()
            .flat_map(|f| (0..d).map(move |s| lift(pres, table, d, f.vertices(), s)))
            .collect()
    };
    let total = SimplicialComplex::from_facets(n, lift_all(&pair.total))?;
    let sub = SimplicialComplex::from_facets(n, lift_all(&pair.sub))?;
    let total_pair = SimplicialPair::new(total, sub)?;
    let images: Vec<usize> = (0..n).map(|u| u / d).collect();
    let projection = SimplicialMap::new(total_pair.total.clone(), pair.total.clone(), images)?;
    let dim = pair.total.dim().max(0) as usize;
    let lifts = (0..=dim)
        .map(|p| {
            pair.total
                .simplices(p)
                .iter()
                .flat_map(|s| {
                    let tp = &total_pair.total;
                    (0..d).map(move |sh| {
                        let l = crate::complex::Simplex::from_sorted(lift(pres, table, d, s.vertices(), sh));
                        tp.index_of(&l).expect("lift is a simplex of the cover")
                    })
                })
                .collect()
        })
        .collect();
    Ok(CoverPair {
        base: pair.clone(),
        total_pair,
        sheet_count: d,
        projection,
        presentation: pres.clone(),
        table: table.clone(),
        lifts,
    })
}

fn identity_block(trips: &mut Vec<(usize, usize, Int)>, r: usize, row: usize, col: usize) {
    trips.extend((0..r).map(|j| (row * r + j, col * r + j, Int::ONE)));
}

/// Complexes and per-degree lift data shared by transfer and projection.
fn lifted_complexes(cover: &CoverPair, system: &EdgeSystem, relative: bool) -> (TwistedComplex, TwistedComplex) {
    let base = twisted_chain_complex(&cover.base, system, relative);
    let pulled = system.pullback(&cover.projection);
    let top = twisted_chain_complex(&cover.total_pair, &pulled, relative);
    (base, top)
}

/// Sends each twisted simplex of the base to the sum of its lifts.
pub fn transfer_chain(cover: &CoverPair, system: &EdgeSystem, relative: bool) -> Result<ChainMap, GroupError> {
    let (base, top) = lifted_complexes(cover, system, relative);
    let r = system.rank();
    let dim = cover.base.total.dim().max(0) as usize;
    let maps = (0..=dim)
        .map(|p| {
            let mut trips = Vec::new();
            for (col, &i) in base.basis(p).iter().enumerate() {
                for s in 0..cover.sheet_count {
                    let row = top
                        .position(p, cover.lift_index(p, i, s))
                        .expect("lift of a relative simplex is relative");
                    identity_block(&mut trips, r, row, col);
                }
            }
            SparseIntMatrix::from_triplets(top.group_rank(p), base.group_rank(p), trips)
        })
        .collect();
    Ok(ChainMap::new(base.realized().clone(), top.realized().clone(), maps)?)
}

/// The chain map induced by the projection.
pub fn projection_chain(cover: &CoverPair, system: &EdgeSystem, relative: bool) -> Result<ChainMap, GroupError> {
    let (base, top) = lifted_complexes(cover, system, relative);
    let r = system.rank();
    let dim = cover.base.total.dim().max(0) as usize;
    let maps = (0..=dim)
        .map(|p| {
            let mut trips = Vec::new();
            for (row, &i) in base.basis(p).iter().enumerate() {
                for s in 0..cover.sheet_count {
                    let col = top.position(p, cover.lift_index(p, i, s)).expect("relative lift");
                    identity_block(&mut trips, r, row, col);
                }
            }
            SparseIntMatrix::from_triplets(base.group_rank(p), top.group_rank(p), trips)
        })
        .collect();
    Ok(ChainMap::new(top.realized().clone(), base.realized().clone(), maps)?)
}
