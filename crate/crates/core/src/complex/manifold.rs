//! Recognition of combinatorial manifolds of dimension at most three.

use std::collections::HashMap;

use super::{Simplex, SimplicialComplex, SimplicialPair};

/// The link of a vertex, generated by its facets with the vertex removed.
pub fn link(x: &SimplicialComplex, v: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = x
        .facets()
        .into_iter()
        .filter(|f| f.contains_vertex(v))
        .map(|f| f.vertices().iter().copied().filter(|&w| w != v).collect())
        .filter(|f: &Vec<usize>| !f.is_empty())
        .collect();
    SimplicialComplex::from_facets(x.vertex_count(), facets).expect("faces of a complex")
}

/// Subcomplex generated by the codimension-one faces lying in exactly one facet.
/// `None` if some such face lies in three or more facets or `x` is not pure.
pub fn manifold_boundary(x: &SimplicialComplex) -> Option<SimplicialComplex> {
    if x.is_empty() || !x.is_pure() {
        return None;
    }
    let d = x.dim() as usize;
    if d == 0 {
        return Some(SimplicialComplex::empty(x.vertex_count()));
    }
    let mut count: HashMap<Simplex, usize> = HashMap::new();
    for f in x.simplices(d) {
        for i in 0..=d {
            *count.entry(f.face(i)).or_default() += 1;
        }
    }
    if count.values().any(|&c| c > 2) {
        return None;
    }
    let faces = count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(s, _)| s.vertices().to_vec());
    SimplicialComplex::from_facets(x.vertex_count(), faces.collect::<Vec<_>>()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Sphere,
    Ball,
}

/// Whether `x` is a combinatorial sphere or ball of dimension `d ≤ 2`.
fn sphere_or_ball(x: &SimplicialComplex, d: usize) -> Option<Kind> {
    if x.is_empty() || x.dim() != d as i64 || !x.is_pure() || !x.is_connected() && d > 0 {
        return None;
    }
    match d {
        0 => match x.count(0) {
            1 => Some(Kind::Ball),
            2 => Some(Kind::Sphere),
            _ => None,
        },
        _ => {
            if !is_manifold(x, d) {
                return None;
            }
            let boundary = manifold_boundary(x)?;
            let sphere_chi = if d % 2 == 0 { 2 } else { 0 };
            match (boundary.is_empty(), x.euler_characteristic()) {
                (true, e) if e == sphere_chi => Some(Kind::Sphere),
                (false, 1) if sphere_or_ball(&boundary, d - 1) == Some(Kind::Sphere) => Some(Kind::Ball),
                _ => None,
            }
        }
    }
}

/// Every vertex link is a combinatorial `(d-1)`-sphere or ball.
fn is_manifold(x: &SimplicialComplex, d: usize) -> bool {
    x.vertices()
        .into_iter()
        .all(|v| sphere_or_ball(&link(x, v), d - 1).is_some())
}

/// The dimension `n ≤ 3` if `pair.total` is a combinatorial `n`-manifold whose
/// boundary is exactly `pair.sub`.
pub fn manifold_dimension(pair: &SimplicialPair) -> Option<usize> {
    let x = &pair.total;
    if x.is_empty() || x.dim() > 3 || !x.is_pure() {
        return None;
    }
    let d = x.dim() as usize;
    if d > 0 && !is_manifold(x, d) {
        return None;
    }
    let boundary = manifold_boundary(x)?;
    (boundary.all_simplices() == pair.sub.all_simplices()).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary_sphere, cone, mobius_band, poincare_sphere, puncture, simplex, torus};

    #[test]
    fn spheres_and_balls() {
        for n in 1..=3 {
            let sphere = SimplicialPair::absolute(boundary_sphere(n + 1));
            assert_eq!(manifold_dimension(&sphere), Some(n));
            let ball = SimplicialPair::new(simplex(n), boundary_sphere(n)).unwrap();
            assert_eq!(manifold_dimension(&ball), Some(n));
        }
    }

    #[test]
    fn surfaces_and_three_manifolds() {
        assert_eq!(manifold_dimension(&mobius_band()), Some(2));
        assert_eq!(manifold_dimension(&SimplicialPair::absolute(torus())), Some(2));
        assert_eq!(
            manifold_dimension(&puncture(&poincare_sphere(), None).unwrap()),
            Some(3)
        );
    }

    #[test]
    fn wrong_boundary_or_singular_points() {
        let m = mobius_band();
        assert_eq!(manifold_dimension(&SimplicialPair::absolute(m.total.clone())), None);
        let c = cone(&torus()).unwrap();
        assert_eq!(manifold_dimension(&c), None);
        let wedge = SimplicialComplex::from_facets(5, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3]]).unwrap();
        assert_eq!(manifold_dimension(&SimplicialPair::absolute(wedge)), None);
    }
}
