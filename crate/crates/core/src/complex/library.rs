//! Fixed triangulations used throughout the crate.

use serde::Deserialize;

use super::{boundary_sphere, double, product, SimplicialComplex, SimplicialPair};

#[derive(Deserialize)]
struct FacetData {
    vertices: usize,
    f_vector: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

fn load_closed_3manifold(text: &str) -> SimplicialComplex {
    let data: FacetData = serde_json::from_str(text).expect("embedded data parses");
    let c = SimplicialComplex::from_facets(data.vertices, data.facets).expect("embedded facets are simplices");
    assert!(c.diagnostics().valid, "embedded complex fails validation");
    assert!(
        c.dim() == 3 && c.is_pure(),
        "embedded complex is not pure of dimension 3"
    );
    assert_eq!(c.f_vector(), data.f_vector, "embedded complex has unexpected f-vector");
    c
}

/// A 16-vertex triangulation of the Poincaré homology 3-sphere.
pub fn poincare_sphere() -> SimplicialComplex {
    load_closed_3manifold(include_str!("../../data/poincare_sphere.json"))
}

/// An 11-vertex triangulation of real projective 3-space.
pub fn rp3() -> SimplicialComplex {
    load_closed_3manifold(include_str!("../../data/rp3.json"))
}

/// The 6-vertex real projective plane.
pub fn real_projective_plane() -> SimplicialComplex {
    let t: [[usize; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    SimplicialComplex::from_facets(6, t.iter().map(|f| f.to_vec())).expect("valid")
}

/// The 5-vertex Möbius band with its boundary circle.
pub fn mobius_band() -> SimplicialPair {
    let total = SimplicialComplex::from_facets(5, (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5])).expect("valid");
    let boundary = SimplicialComplex::from_facets(5, (0..5).map(|i| vec![i, (i + 2) % 5])).expect("valid");
    SimplicialPair::new(total, boundary).expect("boundary is a subcomplex")
}

pub fn circle() -> SimplicialComplex {
    boundary_sphere(2)
}

/// `S¹ × S¹` with 9 vertices and 18 triangles.
pub fn torus() -> SimplicialComplex {
    product(&circle(), &circle())
}

/// The double of the Möbius band along its boundary.
pub fn klein_bottle() -> SimplicialComplex {
    double(&mobius_band()).expect("nonempty boundary").0.total
}
