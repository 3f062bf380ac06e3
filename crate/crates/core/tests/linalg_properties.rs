mod common;

use common::*;
use pdpair::linalg::{
    invariant_factors, invariant_factors_with, smith_form_with, Engine, HomologyGroup, Int, SparseIntMatrix,
};
use proptest::prelude::*;
use rand::Rng;

fn check_smith(a: &SparseIntMatrix, engine: Engine) -> Result<(), TestCaseError> {
    let s = smith_form_with(a, engine);
    let (u, v, d) = (s.u(), s.v(), s.d());
    prop_assert_eq!(u.mul(a).unwrap().mul(&v).unwrap(), d.clone(), "U A V = D");
    prop_assert!(u.mul(&s.u_inv()).unwrap().is_identity(), "U is invertible");
    prop_assert!(v.mul(&s.v_inv()).unwrap().is_identity(), "V is invertible");
    let diag = s.diagonal();
    prop_assert_eq!(diag.len(), s.rank());
    for w in diag.windows(2) {
        prop_assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
    }
    prop_assert!(diag.iter().all(|x| !x.is_negative() && !x.is_zero()));
    for (i, j, _) in d.entries() {
        prop_assert_eq!(i, j);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_postconditions_dense_and_sparse(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(0..9), r.gen_range(0..9));
        let density = r.gen_range(0.2..1.0);
        let m = random_dense(&mut r, rows, cols, 7, density);
        let a = sparse(&m, cols);
        check_smith(&a, Engine::Dense)?;
        check_smith(&a, Engine::Sparse)?;
    }

    #[test]
    fn invariant_factors_match_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..10), r.gen_range(1..10));
        let m = random_dense(&mut r, rows, cols, 5, 0.5);
        let a = sparse(&m, cols);
        let expected: Vec<Int> = smith_diagonal(m).into_iter().map(|x| int(x as i64)).collect();
        prop_assert_eq!(invariant_factors_with(&a, Engine::Dense), expected.clone());
        prop_assert_eq!(invariant_factors_with(&a, Engine::Sparse), expected);
    }

    #[test]
    fn unimodular_conjugation_keeps_invariant_factors(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..12), r.gen_range(1..12));
        let m = random_dense(&mut r, rows, cols, 4, 0.4);
        let (p, _) = random_unimodular(&mut r, rows, 4 * rows);
        let (q, _) = random_unimodular(&mut r, cols, 4 * cols);
        let conj = mat_mul(&mat_mul(&p, &m, rows, cols), &q, cols, cols);
        prop_assert_eq!(invariant_factors(&sparse(&conj, cols)), invariant_factors(&sparse(&m, cols)));
    }

    #[test]
    fn homology_of_hidden_pieces(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_known(&mut r, 4, 8);
        let expected = k.homology();
        let got: Vec<HomologyGroup> = k.complex.homology_all().into_iter().map(|(_, h)| h).collect();
        prop_assert_eq!(&got, &expected);
        prop_assert_eq!(homology_oracle(&k.complex), expected);
    }

    #[test]
    fn quasi_iso_agrees_with_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let top = r.gen_range(0..4);
        let count = r.gen_range(1..7);
        let pieces = random_pieces(&mut r, top, count);
        let extra_count = if r.gen_bool(0.5) { 0 } else { r.gen_range(1..4) };
        let extra = random_pieces(&mut r, top, extra_count);
        let k = *[1i64, -1, 2, 3, 0].get(r.gen_range(0..5)).unwrap();
        let source = known_complex(&mut r, [pieces.clone(), extra.clone()].concat(), top);
        let f = projection_then_scale(&mut r, &source, pieces.len(), k);
        let truth = scaling_is_iso(&known_complex(&mut r, pieces, top).homology(), k)
            && known_complex(&mut r, extra, top).homology().iter().all(HomologyGroup::is_zero);
        let cert = f.is_quasi_iso();
        prop_assert_eq!(cert.quasi_iso, truth);
        let oracle = cone_oracle(&f);
        prop_assert_eq!(oracle.iter().all(HomologyGroup::is_zero), truth);
        let computed: Vec<HomologyGroup> = cert.cone_homology.into_iter().map(|(_, h)| h).collect();
        prop_assert_eq!(computed, oracle);
    }

    #[test]
    fn quasi_iso_on_wide_complexes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let top = r.gen_range(1..3);
        let (count, extra_count) = (r.gen_range(10..30), r.gen_range(0..10));
        let pieces = random_pieces(&mut r, top, count);
        let extra = random_pieces(&mut r, top, extra_count);
        let k = if r.gen_bool(0.7) { 1 } else { 5 };
        let source = known_complex(&mut r, [pieces.clone(), extra.clone()].concat(), top);
        prop_assume!((0..=top as i64).all(|p| source.complex.rank(p) <= 40));
        let f = projection_then_scale(&mut r, &source, pieces.len(), k);
        let oracle = cone_oracle(&f);
        prop_assert_eq!(f.is_quasi_iso().quasi_iso, oracle.iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn coordinate_text_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(0..7), r.gen_range(0..7));
        let a = sparse(&random_dense(&mut r, rows, cols, 1000, 0.3), cols);
        prop_assert_eq!(SparseIntMatrix::from_coordinate_text(&a.to_coordinate_text()).unwrap(), a);
    }
}

#[test]
fn big_entries_reduce_exactly() {
    let big = i64::MAX / 3;
    let a = SparseIntMatrix::from_i64_rows(&[&[big, big - 1, 7], &[big - 2, big, 11], &[3, 5, big]]);
    let s = smith_form_with(&a, Engine::Sparse);
    assert_eq!(s.u().mul(&a).unwrap().mul(&s.v()).unwrap(), s.d());
    let dense = smith_form_with(&a, Engine::Dense);
    assert_eq!(dense.diagonal(), s.diagonal());
}
