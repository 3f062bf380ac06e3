mod common;

use common::*;
use pdpair::complex::{
    boundary_sphere, circle, cone, poincare_sphere, product, puncture, real_projective_plane, simplex, torus,
    SimplicialPair,
};
use pdpair::duality::{twisted_chain_complex, twisted_cochain_complex, TwistedComplex};
use pdpair::group::{
    build_cover, low_index_tables, orientation_systems, permutation_system, presentation, simplify, EdgeSystem,
};
use pdpair::linalg::{HomologyGroup, Int};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn squares_to_zero(tc: &TwistedComplex) -> bool {
    let c = tc.realized();
    (c.lo() + 1..=c.hi()).all(|p| c.boundary(p - 1).mul(&c.boundary(p)).unwrap().is_zero())
}

fn euler(h: &[HomologyGroup]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(p, g)| {
            if p % 2 == 0 {
                g.free_rank as i64
            } else {
                -(g.free_rank as i64)
            }
        })
        .sum()
}

fn chi(pair: &SimplicialPair, relative: bool) -> i64 {
    let e = pair.total.euler_characteristic();
    if relative && !pair.sub.is_empty() {
        e - pair.sub.euler_characteristic()
    } else {
        e
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn twisted_differentials_square_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(2..8);
        let x = random_connected_complex(&mut r, 7, 3, facets);
        let pair = random_pair(&mut r, x);
        let sys = random_system(&mut r, &pair.total);
        for relative in [false, true] {
            let chains = twisted_chain_complex(&pair, &sys, relative);
            let cochains = twisted_cochain_complex(&pair, &sys, relative);
            prop_assert!(squares_to_zero(&chains));
            prop_assert!(squares_to_zero(&cochains));
            let h = chains.homology_all();
            let oracle = homology_oracle(chains.realized());
            prop_assert_eq!(&h[..], &oracle[..h.len()]);
            prop_assert_eq!(euler(&h), sys.rank() as i64 * chi(&pair, relative));
        }
    }

    #[test]
    fn universal_coefficients_with_integers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(1..8);
        let x = random_complex(&mut r, 7, 3, facets);
        let pair = random_pair(&mut r, x);
        let z = EdgeSystem::trivial(1);
        let h = twisted_chain_complex(&pair, &z, true).homology_all();
        let c = twisted_cochain_complex(&pair, &z, true).homology_all();
        for p in 0..h.len() {
            prop_assert_eq!(c[p].free_rank, h[p].free_rank);
            if p + 1 < c.len() {
                prop_assert_eq!(&c[p + 1].torsion, &h[p].torsion);
            }
        }
        prop_assert!(c[0].torsion.is_empty());
    }

    #[test]
    fn finite_covers_compute_permutation_homology(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(3..8);
        let x = random_connected_complex(&mut r, 6, 2, facets);
        let pair = SimplicialPair::absolute(x);
        let pres = presentation(&pair.total, pair.total.vertices()[0]).unwrap();
        let (tables, _) = low_index_tables(&pres, &simplify(&pres), 3, 20_000);
        prop_assume!(!tables.is_empty());
        let t = tables.choose(&mut r).unwrap();
        let cover = build_cover(&pair, t).unwrap();
        prop_assert_eq!(cover.total_pair.total.euler_characteristic(), t.degree as i64 * pair.total.euler_characteristic());
        let up = twisted_chain_complex(&cover.total_pair, &EdgeSystem::trivial(1), false).homology_all();
        let perm = permutation_system(&pres, t).unwrap().edge_system(&pres).unwrap();
        let down = twisted_chain_complex(&pair, &perm, false).homology_all();
        prop_assert_eq!(up, down);
    }

    #[test]
    fn cones_are_contractible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(1..6);
        let k = random_complex(&mut r, 6, 2, facets);
        let (k, _) = k.compacted();
        let c = cone(&k).unwrap();
        let z = EdgeSystem::trivial(1);
        let abs = twisted_chain_complex(&c, &z, false).homology_all();
        prop_assert_eq!(&abs[0], &HomologyGroup::free(1));
        prop_assert!(abs[1..].iter().all(HomologyGroup::is_zero));
        // H_{p+1}(CK, K) is the reduced homology of K
        let rel = twisted_chain_complex(&c, &z, true).homology_all();
        let hk = twisted_chain_complex(&SimplicialPair::absolute(k), &z, false).homology_all();
        prop_assert!(rel[0].is_zero());
        prop_assert_eq!(rel[1].free_rank, hk[0].free_rank - 1);
        for p in 1..hk.len() {
            prop_assert_eq!(&rel[p + 1], &hk[p]);
        }
    }
}

fn integer_homology(pair: &SimplicialPair, relative: bool) -> Vec<String> {
    twisted_chain_complex(pair, &EdgeSystem::trivial(1), relative)
        .homology_all()
        .iter()
        .map(ToString::to_string)
        .collect()
}

#[test]
fn boundary_of_the_four_simplex() {
    let s3 = SimplicialPair::absolute(boundary_sphere(4));
    assert_eq!(integer_homology(&s3, false), ["Z", "0", "0", "Z"]);
}

#[test]
fn projective_plane_with_its_orientation_character() {
    let x = real_projective_plane();
    let pres = presentation(&x, 0).unwrap();
    let systems = orientation_systems(&pres);
    assert_eq!(systems.len(), 2);
    let w = systems[1].edge_system(&pres).unwrap();
    let h = twisted_chain_complex(&SimplicialPair::absolute(x.clone()), &w, false).homology_all();
    assert_eq!(
        h,
        vec![
            HomologyGroup::new(0, vec![Int::from(2)]),
            HomologyGroup::zero(),
            HomologyGroup::free(1)
        ]
    );
    assert_eq!(integer_homology(&SimplicialPair::absolute(x), false), ["Z", "Z/2", "0"]);
}

#[test]
fn product_of_triangles_has_eighteen_triangles() {
    let t = product(&circle(), &circle());
    assert_eq!(t.f_vector(), vec![9, 27, 18]);
    assert_eq!(t.f_vector(), torus().f_vector());
    assert_eq!(integer_homology(&SimplicialPair::absolute(t), false), ["Z", "Z^2", "Z"]);
}

#[test]
fn prism_counts_follow_binomials() {
    for (p, q, top) in [(1, 1, 2), (2, 1, 3), (2, 2, 6), (3, 1, 4)] {
        let prism = product(&simplex(p), &simplex(q));
        assert_eq!(prism.count(p + q), top, "Δ{p} × Δ{q}");
        assert_eq!(prism.euler_characteristic(), 1);
    }
}

#[test]
fn poincare_sphere_is_a_homology_sphere() {
    let x = poincare_sphere();
    assert_eq!(x.f_vector(), vec![16, 111, 190, 95]);
    assert_eq!(
        integer_homology(&SimplicialPair::absolute(x.clone()), false),
        ["Z", "0", "0", "Z"]
    );
    let a = puncture(&x, None).unwrap();
    assert_eq!(
        integer_homology(&SimplicialPair::absolute(a.total), false),
        ["Z", "0", "0", "0"]
    );
}

#[test]
fn relative_sphere_of_a_simplex() {
    for n in 1..=4 {
        let pair = SimplicialPair::new(simplex(n), boundary_sphere(n)).unwrap();
        let h = integer_homology(&pair, true);
        let expected: Vec<&str> = (0..=n).map(|p| if p == n { "Z" } else { "0" }).collect();
        assert_eq!(h, expected);
    }
}
