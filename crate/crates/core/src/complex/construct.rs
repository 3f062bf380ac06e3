use std::collections::{HashMap, HashSet};

use super::{Simplex, SimplicialComplex, SimplicialMap, SimplicialPair, SimplicialTriad};
use crate::error::ComplexError;

/// The full `n`-simplex on vertices `0..=n`.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(n + 1, [(0..=n).collect::<Vec<_>>()]).expect("valid simplex")
}

/// `∂Δⁿ`, a combinatorial `(n−1)`-sphere.
pub fn boundary_sphere(n: usize) -> SimplicialComplex {
    assert!(n >= 1, "boundary_sphere needs n >= 1");
    let facets = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect::<Vec<_>>());
    SimplicialComplex::from_facets(n + 1, facets).expect("valid sphere")
}

/// `(CK, K)` with the apex as the new last vertex.
pub fn cone(k: &SimplicialComplex) -> Result<SimplicialPair, ComplexError> {
    if k.is_empty() {
        return Err(ComplexError::Empty);
    }
    let apex = k.vertex_count();
    let facets = k.facets().into_iter().map(|f| {
        let mut v = f.vertices().to_vec();
        v.push(apex);
        v
    });
    let total = SimplicialComplex::from_facets(apex + 1, facets)?;
    SimplicialPair::new(total, k.with_vertex_count(apex + 1))
}

/// One monotone lattice path through a `q × r` grid with its shuffle sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    /// Grid points `(i, j)` from `(0, 0)` to `(q, r)`.
    pub path: Vec<(usize, usize)>,
    /// Sign of the shuffle permutation.
    pub sign: i32,
}

/// All `(q, r)`-shuffles. A step in the second factor taken before a step in
/// the first counts as one inversion.
pub fn shuffles(q: usize, r: usize) -> Vec<Shuffle> {
    let mut out = Vec::new();
    let mut path = vec![(0, 0)];
    fn rec(q: usize, r: usize, path: &mut Vec<(usize, usize)>, inv: usize, out: &mut Vec<Shuffle>) {
        let (i, j) = *path.last().expect("nonempty");
        if i == q && j == r {
            out.push(Shuffle {
                path: path.clone(),
                sign: if inv % 2 == 0 { 1 } else { -1 },
            });
            return;
        }
        if i < q {
            path.push((i + 1, j));
            // each earlier step in the second factor precedes this one
            rec(q, r, path, inv + j, out);
            path.pop();
        }
        if j < r {
            path.push((i, j + 1));
            rec(q, r, path, inv, out);
            path.pop();
        }
    }
    rec(q, r, &mut path, 0, &mut out);
    out
}

/// Product with vertex `(a, b)` numbered `a * |B| + b`; simplices are the
/// monotone staircase chains over pairs of facets.
pub fn product(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let nb = b.vertex_count();
    let n = a.vertex_count() * nb;
    if a.is_empty() || b.is_empty() {
        return SimplicialComplex::empty(n);
    }
    let fa = a.facets();
    let fb = b.facets();
    let mut facets = Vec::new();
    let mut cache: HashMap<(usize, usize), Vec<Shuffle>> = HashMap::new();
    for s in &fa {
        for t in &fb {
            let sh = cache
                .entry((s.dim(), t.dim()))
                .or_insert_with(|| shuffles(s.dim(), t.dim()));
            for path in sh.iter() {
                facets.push(
                    path.path
                        .iter()
                        .map(|&(i, j)| s.vertices()[i] * nb + t.vertices()[j])
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    SimplicialComplex::from_facets(n, facets).expect("staircases are simplices")
}

/// `(A, B) × (C, D) = (A × C, A × D ∪ B × C)`.
pub fn product_pair(a: &SimplicialPair, b: &SimplicialPair) -> SimplicialPair {
    let total = product(&a.total, &b.total);
    let ad = product(&a.total, &b.sub);
    let bc = product(&a.sub, &b.total);
    let sub = ad.union(&bc).with_vertex_count(total.vertex_count());
    SimplicialPair::new(total, sub).expect("products of subcomplexes are subcomplexes")
}

/// A glued complex together with the maps from each input.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub complex: SimplicialComplex,
    pub inclusion1: SimplicialMap,
    pub inclusion2: SimplicialMap,
    /// Vertex over each vertex id of the first gluing locus: the collar's middle
    /// level, or the identified vertex itself for a direct pushout.
    pub middle: Vec<Option<usize>>,
    /// Exchanges the two sides when both inputs coincide and the identification is the identity.
    pub swap: Option<Vec<usize>>,
}

/// `X₁ ∪_Y X₂`.
///
/// When `Y` is a full subcomplex of both sides the pushout is simplicial and
/// is built directly: vertices are tagged `(0, v)` for the first copy and
/// `(2, w)` for the unidentified vertices of the second. Otherwise a two-level
/// collar `Y × [0, 1]` is inserted between the copies, with middle vertices
/// tagged `(1, y)`. Tags are flattened in order.
pub fn glue(x1: &SimplicialPair, x2: &SimplicialPair, along: &SimplicialMap) -> Result<Gluing, ComplexError> {
    if along.domain != x1.sub || along.codomain != x2.sub {
        return Err(ComplexError::NotAnIsomorphism(
            "identification must map sub of the first pair to sub of the second".into(),
        ));
    }
    if !along.is_isomorphism() {
        return Err(ComplexError::NotAnIsomorphism(
            "vertex map is not bijective on simplices".into(),
        ));
    }
    let g = glue_along(&x1.total, &x2.total, &x1.sub, &x2.sub, &along.vertex_images, None)?;
    Ok(g.0)
}

/// True when every simplex of `total` spanned by vertices of `sub` lies in `sub`.
pub fn is_full_subcomplex(sub: &SimplicialComplex, total: &SimplicialComplex) -> bool {
    let mut inside = vec![false; total.vertex_count().max(sub.vertex_count())];
    for v in sub.vertices() {
        inside[v] = true;
    }
    (1..=total.dim().max(0) as usize).all(|d| {
        total
            .simplices(d)
            .iter()
            .all(|s| sub.contains(s) || s.vertices().iter().any(|v| !inside[*v]))
    })
}

fn glue_along(
    t1: &SimplicialComplex,
    t2: &SimplicialComplex,
    locus1: &SimplicialComplex,
    locus2: &SimplicialComplex,
    iso: &[usize],
    corner: Option<&SimplicialComplex>,
) -> Result<(Gluing, Vec<Vec<usize>>), ComplexError> {
    if is_full_subcomplex(locus1, t1) && is_full_subcomplex(locus2, t2) {
        direct_glue(t1, t2, locus1, iso)
    } else {
        collar_glue(t1, t2, locus1, iso, corner)
    }
}

fn direct_glue(
    t1: &SimplicialComplex,
    t2: &SimplicialComplex,
    locus: &SimplicialComplex,
    iso: &[usize],
) -> Result<(Gluing, Vec<Vec<usize>>), ComplexError> {
    let v1 = t1.vertices();
    let v2 = t2.vertices();
    let vy = locus.vertices();
    let mut id0 = vec![usize::MAX; t1.vertex_count()];
    let mut id2 = vec![usize::MAX; t2.vertex_count()];
    let mut next = 0;
    for &v in &v1 {
        id0[v] = next;
        next += 1;
    }
    for &y in &vy {
        id2[iso[y]] = id0[y];
    }
    for &w in &v2 {
        if id2[w] == usize::MAX {
            id2[w] = next;
            next += 1;
        }
    }
    let n = next;
    let facets = t1
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|v| id0[*v]).collect())
        .chain(
            t2.facets()
                .iter()
                .map(|f| f.vertices().iter().map(|w| id2[*w]).collect()),
        )
        .collect::<Vec<Vec<usize>>>();
    let complex = SimplicialComplex::from_facets(n, facets)?;
    let mut img1 = vec![0; t1.vertex_count()];
    for &v in &v1 {
        img1[v] = id0[v];
    }
    let mut img2 = vec![0; t2.vertex_count()];
    for &w in &v2 {
        img2[w] = id2[w];
    }
    let inclusion1 = SimplicialMap::new(t1.clone(), complex.clone(), img1)?;
    let inclusion2 = SimplicialMap::new(t2.clone(), complex.clone(), img2)?;
    let mut middle = vec![None; t1.vertex_count()];
    for &y in &vy {
        middle[y] = Some(id0[y]);
    }
    let same = t1 == t2 && vy.iter().all(|&y| iso[y] == y);
    let swap = same.then(|| {
        let mut s: Vec<usize> = (0..n).collect();
        for &v in &v1 {
            s[id0[v]] = id2[v];
            s[id2[v]] = id0[v];
        }
        s
    });
    let gluing = Gluing {
        complex,
        inclusion1,
        inclusion2,
        middle,
        swap,
    };
    Ok((gluing, Vec::new()))
}

/// Builds the collar gluing; optionally also the image of a collar subcomplex `Y₀ × I`.
fn collar_glue(
    t1: &SimplicialComplex,
    t2: &SimplicialComplex,
    locus: &SimplicialComplex,
    iso: &[usize],
    corner: Option<&SimplicialComplex>,
) -> Result<(Gluing, Vec<Vec<usize>>), ComplexError> {
    let v1 = t1.vertices();
    let v2 = t2.vertices();
    let vy = locus.vertices();
    let mut id0 = vec![usize::MAX; t1.vertex_count()];
    let mut id1 = vec![None; t1.vertex_count()];
    let mut id2 = vec![usize::MAX; t2.vertex_count()];
    let mut next = 0;
    for &v in &v1 {
        id0[v] = next;
        next += 1;
    }
    for &y in &vy {
        id1[y] = Some(next);
        next += 1;
    }
    for &w in &v2 {
        id2[w] = next;
        next += 1;
    }
    let n = next;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for f in t1.facets() {
        facets.push(f.vertices().iter().map(|v| id0[*v]).collect());
    }
    for f in t2.facets() {
        facets.push(f.vertices().iter().map(|w| id2[*w]).collect());
    }
    let stair = |tau: &Simplex, low: &dyn Fn(usize) -> usize, out: &mut Vec<Vec<usize>>| {
        let k = tau.vertices().len();
        for cut in 0..k {
            let mut s = Vec::with_capacity(k + 1);
            for (i, &y) in tau.vertices().iter().enumerate() {
                if i <= cut {
                    s.push(low(y));
                }
                if i >= cut {
                    s.push(id1[y].expect("locus vertex"));
                }
            }
            out.push(s);
        }
    };
    let low1 = |y: usize| id0[y];
    let low2 = |y: usize| id2[iso[y]];
    for tau in locus.facets() {
        stair(&tau, &low1, &mut facets);
        stair(&tau, &low2, &mut facets);
    }
    let mut corner_facets = Vec::new();
    if let Some(c) = corner {
        for tau in c.facets() {
            stair(&tau, &low1, &mut corner_facets);
            stair(&tau, &low2, &mut corner_facets);
        }
    }
    let complex = SimplicialComplex::from_facets(n, facets)?;
    let mut img1 = vec![0; t1.vertex_count()];
    for &v in &v1 {
        img1[v] = id0[v];
    }
    let mut img2 = vec![0; t2.vertex_count()];
    for &w in &v2 {
        img2[w] = id2[w];
    }
    let inclusion1 = SimplicialMap::new(t1.clone(), complex.clone(), img1)?;
    let inclusion2 = SimplicialMap::new(t2.clone(), complex.clone(), img2)?;
    let same = t1 == t2 && vy.iter().all(|&y| iso[y] == y);
    let swap = same.then(|| {
        let mut s: Vec<usize> = (0..n).collect();
        for &v in &v1 {
            s[id0[v]] = id2[v];
            s[id2[v]] = id0[v];
        }
        s
    });
    Ok((
        Gluing {
            complex,
            inclusion1,
            inclusion2,
            middle: id1,
            swap,
        },
        corner_facets,
    ))
}

/// The double `X ∪_Y X` of a pair; the result has empty sub.
pub fn double(pair: &SimplicialPair) -> Result<(SimplicialPair, Gluing), ComplexError> {
    let empty = SimplicialComplex::empty(pair.total.vertex_count());
    let triad = SimplicialTriad::new(pair.total.clone(), empty, pair.sub.clone())?;
    double_triad(&triad)
}

/// Doubles `X` along `Y₂`; the sub of the result is `Y₁ ∪_{Y₀} Y₁`.
pub fn double_triad(triad: &SimplicialTriad) -> Result<(SimplicialPair, Gluing), ComplexError> {
    if triad.sub2.is_empty() {
        return Err(ComplexError::EmptySub);
    }
    let ident: Vec<usize> = (0..triad.total.vertex_count()).collect();
    let corner = triad.corner();
    let (g, corner_facets) = glue_along(
        &triad.total,
        &triad.total,
        &triad.sub2,
        &triad.sub2,
        &ident,
        Some(&corner),
    )?;
    let n = g.complex.vertex_count();
    let mut sub_facets: Vec<Vec<usize>> = corner_facets;
    for f in triad.sub1.facets() {
        sub_facets.push(f.vertices().iter().map(|v| g.inclusion1.vertex_images[*v]).collect());
        sub_facets.push(f.vertices().iter().map(|v| g.inclusion2.vertex_images[*v]).collect());
    }
    let sub = SimplicialComplex::from_facets(n, sub_facets)?;
    let pair = SimplicialPair::new(g.complex.clone(), sub)?;
    Ok((pair, g))
}

/// Removes one top simplex, keeping its proper faces: `(X \ int σ, ∂σ)`.
pub fn puncture(complex: &SimplicialComplex, facet: Option<usize>) -> Result<SimplicialPair, ComplexError> {
    if complex.is_empty() {
        return Err(ComplexError::Empty);
    }
    if !complex.is_pure() {
        return Err(ComplexError::NotPure);
    }
    let d = complex.dim() as usize;
    let idx = facet.unwrap_or(0);
    let sigma = complex
        .simplices(d)
        .get(idx)
        .ok_or(ComplexError::FacetIndex(idx))?
        .clone();
    let total = complex.filter(|s| *s != sigma);
    let faces: HashSet<Simplex> = sigma.all_faces().filter(|f| *f != sigma).collect();
    let sub = total.filter(|s| faces.contains(s));
    SimplicialPair::new(total, sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_two_triangles() {
        let sq = product(&simplex(1), &simplex(1));
        assert_eq!(sq.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn shuffle_signs() {
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].path, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(s[0].sign, 1);
        assert_eq!(s[1].sign, -1);
        assert_eq!(shuffles(2, 3).len(), 10);
    }

    #[test]
    fn cone_counts() {
        let k = boundary_sphere(3);
        let c = cone(&k).unwrap();
        assert_eq!(c.total.total_count(), 2 * k.total_count() + 1);
    }

    #[test]
    fn doubled_interval_is_a_circle() {
        let pair = SimplicialPair::new(simplex(1), boundary_sphere(1)).unwrap();
        let (d, g) = double(&pair).unwrap();
        assert!(d.sub.is_empty());
        assert_eq!(d.total.euler_characteristic(), 0);
        assert_eq!(d.total.f_vector(), vec![6, 6]);
        assert!(g.swap.is_some());
    }

    #[test]
    fn full_locus_glues_directly() {
        let edge = SimplicialComplex::from_facets(3, vec![vec![0, 1]]).unwrap();
        let pair = SimplicialPair::new(simplex(2), edge).unwrap();
        let (d, g) = double(&pair).unwrap();
        assert_eq!(d.total.f_vector(), vec![4, 5, 2]);
        let swap = g.swap.unwrap();
        assert_eq!((swap[0], swap[1]), (0, 1));
        assert_eq!(swap[2], 3);
    }
}
