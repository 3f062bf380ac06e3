//! Inputs shared by the benchmarks in `benches/`.

use pdpair::complex::{poincare_sphere, product, real_projective_plane, torus, SimplicialComplex, SimplicialPair};
use pdpair::group::{orientation_systems, presentation, EdgeSystem, GroupPresentation};
use pdpair::linalg::SparseIntMatrix;

/// Top boundary matrix of the Poincaré sphere.
pub fn sphere_boundary() -> SparseIntMatrix {
    poincare_sphere().boundary_matrix(3).expect("dimension 3 exists")
}

pub fn sphere_presentation() -> GroupPresentation {
    presentation(&poincare_sphere(), 0).expect("connected")
}

/// The projective plane with its non-trivial orientation character.
pub fn twisted_rp2() -> (SimplicialPair, EdgeSystem) {
    let x = real_projective_plane();
    let pres = presentation(&x, 0).expect("connected");
    let sys = orientation_systems(&pres).pop().expect("two characters");
    let o = sys.edge_system(&pres).expect("matches presentation");
    (SimplicialPair::absolute(x), o)
}

pub fn torus_pair() -> SimplicialPair {
    SimplicialPair::absolute(torus())
}

/// Torus times a circle, a closed 3-manifold with 162 facets.
pub fn three_torus_slice() -> SimplicialComplex {
    product(&torus(), &pdpair::complex::circle())
}
