mod common;

use common::*;
use pdpair::complex::{
    boundary_sphere, circle, klein_bottle, mobius_band, puncture, real_projective_plane, simplex, torus,
    SimplicialComplex, SimplicialPair, SimplicialTriad,
};
use pdpair::duality::{
    find_thom_class, verify_pair, verify_pair_with, verify_triad, DualityReport, Status, Verdict, VerifyOptions,
};
use pdpair::group::{orientation_systems, presentation};
use pdpair::scenario::theorem_a_pair;
use proptest::prelude::*;
use rand::Rng;

fn verdict(pair: &SimplicialPair) -> DualityReport {
    verify_pair(pair, &VerifyOptions::default()).unwrap()
}

fn absolute(x: SimplicialComplex) -> SimplicialPair {
    SimplicialPair::absolute(x)
}

#[test]
fn interval_rel_endpoints_is_a_poincare_pair() {
    let r = verdict(&SimplicialPair::new(simplex(1), boundary_sphere(1)).unwrap());
    assert_eq!(r.verdict, Verdict::PoincarePair);
    assert_eq!(r.formal_dimension, Some(1));
    assert_eq!(r.condition_statuses(), [Status::Holds; 3]);
}

#[test]
fn contractible_complexes_behave_like_a_point() {
    for x in [simplex(1), simplex(3), pdpair::complex::cone(&circle()).unwrap().total] {
        let r = verdict(&absolute(x));
        assert_eq!(r.verdict, Verdict::PoincarePair);
        assert_eq!(r.formal_dimension, Some(0));
    }
}

#[test]
fn circle_with_a_whisker() {
    let wedge = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3]]).unwrap();
    // homotopy equivalent to the circle, but neither a manifold nor finite π₁
    let r = verdict(&absolute(wedge.clone()));
    assert!(r.integer_duality);
    assert_ne!(r.verdict, Verdict::NotPoincarePair);
    // relative to the free end the top degree dualizes to nothing
    let end = SimplicialComplex::from_facets(4, vec![vec![3]]).unwrap();
    let r = verdict(&SimplicialPair::new(wedge, end).unwrap());
    assert_eq!(r.verdict, Verdict::NotPoincarePair);
    assert!(!r.integer_duality);
}

#[test]
fn closed_surfaces() {
    for (name, x, orientation) in [
        ("circle", circle(), "trivial"),
        ("torus", torus(), "trivial"),
        ("klein bottle", klein_bottle(), "w"),
        ("projective plane", real_projective_plane(), "w"),
    ] {
        let r = verdict(&absolute(x));
        assert_eq!(r.verdict, Verdict::PoincarePair, "{name}");
        let label = &r.orientation.as_ref().unwrap().label;
        assert_eq!(label == "trivial", orientation == "trivial", "{name}: {label}");
    }
}

#[test]
fn mobius_band_rel_boundary() {
    let r = verdict(&mobius_band());
    assert_eq!(r.verdict, Verdict::PoincarePair);
    assert_eq!(r.formal_dimension, Some(2));
    assert_ne!(r.orientation.unwrap().label, "trivial");
}

#[test]
fn projective_plane_needs_its_twist() {
    let x = absolute(real_projective_plane());
    let opts = VerifyOptions::default();
    let pres = presentation(&x.total, x.total.vertices()[0]).unwrap();
    let systems = orientation_systems(&pres);
    let trivial = systems[0].signs().unwrap();
    let w = systems[1].signs().unwrap();
    // with trivial coefficients only H_0 has free rank one
    let r = verify_pair_with(&x, Some(&trivial), None, &opts).unwrap();
    assert_eq!(r.formal_dimension, Some(0));
    assert_eq!(r.verdict, Verdict::NotPoincarePair);
    let r = verify_pair_with(&x, Some(&w), None, &opts).unwrap();
    assert_eq!(r.verdict, Verdict::PoincarePair);
}

#[test]
fn cone_on_the_product_fails_only_at_the_boundary() {
    let (a, x) = theorem_a_pair(1).unwrap();
    let ha = pdpair::duality::twisted_chain_complex(&absolute(a.total), &pdpair::group::EdgeSystem::trivial(1), false)
        .homology_all();
    assert!(ha[1..].iter().all(|h| h.is_zero()));
    let r = verdict(&x);
    assert_eq!(r.verdict, Verdict::NotPoincarePair);
    assert_eq!(r.formal_dimension, Some(1));
    assert!(r.integer_duality);
    let [c1, c2, c3] = r.condition_statuses();
    assert_eq!((c1, c2, c3), (Status::Holds, Status::Holds, Status::Fails));
    let w = r.condition(3).unwrap().witness.as_ref().unwrap();
    assert!(w.cone_homology.iter().any(|(_, h)| !h.is_zero()));
}

#[test]
fn cone_on_two_acyclic_pieces_has_a_degree_one_thom_class() {
    // the base is a homology S⁰ and the cone is contractible
    let (_, x) = theorem_a_pair(1).unwrap();
    let opts = VerifyOptions::default();
    assert_eq!(find_thom_class(&x, 1, &opts).unwrap().map(|t| t.degree), Some(1));
    assert!(find_thom_class(&x, 0, &opts).unwrap().is_none());
}

#[test]
fn disk_as_a_triad() {
    let e1 = SimplicialComplex::from_facets(3, vec![vec![0, 1]]).unwrap();
    let e23 = SimplicialComplex::from_facets(3, vec![vec![1, 2], vec![0, 2]]).unwrap();
    let triad = SimplicialTriad::new(simplex(2), e23, e1).unwrap();
    let r = verify_triad(&triad, &VerifyOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::PoincarePair);
    assert_eq!(r.global_sign, 1);
    assert_eq!(r.pieces.len(), 2);
}

#[test]
fn punctured_torus() {
    let p = puncture(&torus(), None).unwrap();
    assert_eq!(verdict(&p).verdict, Verdict::PoincarePair);
}

#[test]
fn disks_carry_thom_classes_in_their_dimension() {
    let opts = VerifyOptions::default();
    for k in 1..=3 {
        let pair = SimplicialPair::new(simplex(k), boundary_sphere(k)).unwrap();
        let t = find_thom_class(&pair, k, &opts).unwrap().expect("thom class");
        assert_eq!(t.degree, k);
        for j in 0..=k {
            if j != k {
                assert!(find_thom_class(&pair, j, &opts).unwrap().is_none(), "D{k} degree {j}");
            }
        }
    }
    let point = absolute(simplex(2));
    assert_eq!(find_thom_class(&point, 0, &opts).unwrap().map(|t| t.degree), Some(0));
}

fn decided(s: Status) -> bool {
    matches!(s, Status::Holds | Status::Fails)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conditions_are_redundant_in_pairs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(1..6);
        let x = random_connected_complex(&mut r, 5, 2, facets);
        let pair = random_pair(&mut r, x);
        let report = verdict(&pair);
        prop_assume!(!report.conditions.is_empty());
        let [c1, c2, c3] = report.condition_statuses();
        if decided(c1) && decided(c2) {
            prop_assert_eq!(c1, c2);
        }
        if c1 == Status::Holds && c3 == Status::Holds {
            prop_assert!(c2 != Status::Fails);
        }
        if c2 == Status::Holds && c3 == Status::Holds {
            prop_assert!(c1 != Status::Fails);
        }
        let all = [c1, c2, c3].iter().fold(Status::NotApplicable, |s, c| s.and(*c));
        prop_assert_eq!(report.verdict, Verdict::from(all));
    }

    #[test]
    fn degree_zero_thom_classes_need_an_empty_subcomplex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(1..5);
        let x = random_connected_complex(&mut r, 5, 2, facets);
        let pair = random_pair(&mut r, x);
        let found = find_thom_class(&pair, 0, &VerifyOptions::default()).unwrap();
        if found.is_some() {
            prop_assert!(pair.sub.is_empty());
        }
    }

    #[test]
    fn cones_have_degree_zero_thom_classes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(1..5);
        let k = random_complex(&mut r, 5, 2, facets).compacted().0;
        let c = pdpair::complex::cone(&k).unwrap();
        let found = find_thom_class(&absolute(c.total), 0, &VerifyOptions::default()).unwrap();
        prop_assert!(found.is_some());
    }
}

#[test]
fn wedge_pieces_glued_at_a_point_are_not_pairs() {
    let point = |n| SimplicialComplex::from_facets(n, vec![vec![0]]).unwrap();
    let wedge = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3]]).unwrap();
    for pair in [
        SimplicialPair::new(circle(), point(3)).unwrap(),
        SimplicialPair::new(simplex(1), point(2)).unwrap(),
        SimplicialPair::new(wedge, point(4)).unwrap(),
    ] {
        assert_eq!(verdict(&pair).verdict, Verdict::NotPoincarePair);
    }
    // the point itself is a Poincaré space of dimension zero
    assert_eq!(verdict(&absolute(point(1))).verdict, Verdict::PoincarePair);
}
