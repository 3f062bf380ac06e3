mod common;

use common::*;
use pdpair::complex::{
    boundary_sphere, klein_bottle, poincare_sphere, real_projective_plane, rp3, torus, SimplicialPair,
};
use pdpair::duality::twisted_chain_complex;
use pdpair::group::{
    build_cover, enumerate_cosets, low_index_subgroups, low_index_tables, permutation_system, presentation,
    projection_chain, simplify, todd_coxeter, transfer_chain, EdgeSystem, Word, DEFAULT_MAX_COSETS,
};
use pdpair::linalg::Int;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// `w^k` as a word.
fn power(w: &[i32], k: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * k).collect()
}

/// The von Dyck group `⟨a, b | a^p, b^q, (ab)^r⟩`.
fn triangle_group(p: usize, q: usize, r: usize) -> Vec<Word> {
    vec![power(&[1], p), power(&[2], q), power(&[1, 2], r)]
}

#[test]
fn orders_of_finite_groups() {
    for (rels, order) in [
        (triangle_group(2, 2, 5), 10),
        (triangle_group(2, 3, 3), 12),
        (triangle_group(2, 3, 4), 24),
        (triangle_group(2, 3, 5), 60),
        (vec![power(&[1], 7)], 7),
        (vec![power(&[1], 4), vec![1, 2, -1, -2], power(&[2], 3)], 12),
    ] {
        let perms = enumerate_cosets(2.min(rels.len()), &rels, &[], 10_000).unwrap();
        assert_eq!(perms[0].len(), order, "{rels:?}");
    }
}

#[test]
fn coset_enumeration_respects_the_cap() {
    // the free abelian group of rank two is infinite
    let rels = vec![vec![1, 2, -1, -2]];
    assert!(enumerate_cosets(2, &rels, &[], 500).is_err());
}

#[test]
fn fundamental_groups_of_fixtures() {
    for (name, x, order) in [
        ("poincare sphere", poincare_sphere(), 120),
        ("rp3", rp3(), 2),
        ("rp2", real_projective_plane(), 2),
        ("three-sphere", boundary_sphere(4), 1),
    ] {
        let pres = presentation(&x, 0).unwrap();
        let t = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t.degree, order, "{name}");
        assert!(t.complete);
    }
    for x in [torus(), klein_bottle()] {
        let pres = presentation(&x, 0).unwrap();
        assert!(todd_coxeter(&pres, &[], 2_000).is_err());
    }
}

#[test]
fn poincare_sphere_has_perfect_fundamental_group() {
    let pres = presentation(&poincare_sphere(), 0).unwrap();
    assert!(pres.abelianization().is_zero());
    let (tables, exhaustive) = low_index_tables(&pres, &simplify(&pres), 5, 200_000);
    assert!(exhaustive);
    // the binary icosahedral group acts on the five cosets of a binary tetrahedral subgroup
    let degrees: Vec<usize> = tables.iter().map(|t| t.degree).collect();
    assert_eq!(degrees, vec![5; 5]);
}

/// Number of subgroups of index `n` in a free group of rank `r`.
fn hall_count(n: usize, r: u32) -> i128 {
    if r == 0 {
        return i128::from(n == 1);
    }
    let fact = |k: usize| (1..=k as i128).product::<i128>();
    let mut a = vec![0i128; n + 1];
    a[1] = 1;
    for m in 2..=n {
        let mut v = m as i128 * fact(m).pow(r - 1);
        for k in 1..m {
            v -= fact(m - k).pow(r - 1) * a[k];
        }
        a[m] = v;
    }
    a[n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graphs_have_the_subgroup_counts_of_free_groups(seed in any::<u64>()) {
        let mut r = rng(seed);
        let edges = r.gen_range(2..9);
        let x = random_connected_complex(&mut r, 6, 1, edges);
        let rank = 1 - x.euler_characteristic();
        let pres = presentation(&x, 0).unwrap();
        let simp = simplify(&pres);
        prop_assert_eq!(simp.generator_count as i64, rank);
        let found = low_index_subgroups(simp.generator_count, &simp.relators, 3, 1_000_000);
        prop_assert!(found.exhaustive);
        for n in 1..=3 {
            let count = found.tables.iter().filter(|t| t.first().map_or(1, Vec::len) == n).count() as i128;
            prop_assert_eq!(count, hall_count(n, rank as u32), "index {}", n);
        }
    }

    #[test]
    fn index_two_subgroups_come_from_the_abelianization(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(3..9);
        let x = random_connected_complex(&mut r, 6, 2, facets);
        let pres = presentation(&x, 0).unwrap();
        let ab = pres.abelianization();
        let even = ab.torsion.iter().filter(|t| Int::from(2).divides(t)).count();
        let expected = (1usize << (ab.free_rank + even)) - 1;
        let (tables, exhaustive) = low_index_tables(&pres, &simplify(&pres), 2, 1_000_000);
        prop_assert!(exhaustive);
        prop_assert_eq!(tables.len(), expected);
        for t in &tables {
            prop_assert!(t.validate(&pres).is_ok());
        }
    }

    #[test]
    fn transfer_then_projection_multiplies_by_the_degree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(3..8);
        let x = random_connected_complex(&mut r, 6, 2, facets);
        let pair = random_pair(&mut r, x);
        let pres = presentation(&pair.total, pair.total.vertices()[0]).unwrap();
        let (tables, _) = low_index_tables(&pres, &simplify(&pres), 3, 20_000);
        prop_assume!(!tables.is_empty());
        let t = tables.choose(&mut r).unwrap();
        let cover = build_cover(&pair, t).unwrap();
        prop_assert_eq!(cover.sheet_count, t.degree);
        prop_assert!(cover.total_pair.total.is_connected());
        let sys = random_system(&mut r, &pair.total);
        for relative in [false, true] {
            let up = transfer_chain(&cover, &sys, relative).unwrap();
            let down = projection_chain(&cover, &sys, relative).unwrap();
            let composite = up.then(&down).unwrap();
            let d = Int::from(t.degree as i64);
            for m in composite.maps() {
                let expected = pdpair::linalg::SparseIntMatrix::identity(m.rows()).scale(&d);
                prop_assert_eq!(m, &expected);
            }
        }
    }

    #[test]
    fn covers_of_pairs_lift_the_subcomplex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let facets = r.gen_range(3..8);
        let x = random_connected_complex(&mut r, 6, 2, facets);
        let pair = random_pair(&mut r, x);
        let pres = presentation(&pair.total, pair.total.vertices()[0]).unwrap();
        let (tables, _) = low_index_tables(&pres, &simplify(&pres), 3, 20_000);
        prop_assume!(!tables.is_empty());
        let t = tables.choose(&mut r).unwrap();
        let cover = build_cover(&pair, t).unwrap();
        let d = t.degree;
        prop_assert_eq!(cover.total_pair.total.f_vector(), pair.total.f_vector().iter().map(|c| c * d).collect::<Vec<_>>());
        prop_assert_eq!(cover.total_pair.sub.total_count(), pair.sub.total_count() * d);
        let up = twisted_chain_complex(&cover.total_pair, &EdgeSystem::trivial(1), true).homology_all();
        let perm = permutation_system(&pres, t).unwrap().edge_system(&pres).unwrap();
        let down = twisted_chain_complex(&pair, &perm, true).homology_all();
        prop_assert_eq!(up, down);
    }
}

#[test]
fn double_cover_of_the_projective_plane_is_a_sphere() {
    let base = SimplicialPair::absolute(real_projective_plane());
    let pres = presentation(&base.total, 0).unwrap();
    let (tables, _) = low_index_tables(&pres, &simplify(&pres), 2, 10_000);
    assert_eq!(tables.len(), 1);
    let cover = build_cover(&base, &tables[0]).unwrap();
    assert_eq!(cover.total_pair.total.euler_characteristic(), 2);
    let h: Vec<String> = twisted_chain_complex(&cover.total_pair, &EdgeSystem::trivial(1), false)
        .homology_all()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(h, ["Z", "0", "Z"]);
}
