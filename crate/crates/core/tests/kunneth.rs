mod common;

use common::*;
use pdpair::complex::{product_pair, SimplicialPair};
use pdpair::duality::{
    cap_cross_check, kunneth_check, kunneth_prediction, tensor_groups, tor_groups, twisted_chain_complex,
    twisted_cochain_complex, Factor,
};
use pdpair::group::EdgeSystem;
use pdpair::linalg::{HomologyGroup, Int};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn group(free: usize, torsion: &[i64]) -> HomologyGroup {
    HomologyGroup::new(free, torsion.iter().map(|&t| Int::from(t)).collect())
}

#[test]
fn tensor_and_tor_of_cyclic_groups() {
    assert_eq!(tensor_groups(&group(0, &[4]), &group(0, &[6])), group(0, &[2]));
    assert_eq!(tor_groups(&group(0, &[4]), &group(0, &[6])), group(0, &[2]));
    assert_eq!(tensor_groups(&group(2, &[3]), &group(1, &[5])), group(2, &[3, 5, 5]));
    assert_eq!(tor_groups(&group(3, &[]), &group(0, &[7])), HomologyGroup::zero());
    assert_eq!(tor_groups(&group(0, &[2, 9]), &group(0, &[6])), group(0, &[2, 3]));
}

fn small_pair(r: &mut ChaCha8Rng) -> SimplicialPair {
    let facets = r.gen_range(1..4);
    let x = random_connected_complex(r, 4, 2, facets);
    random_pair(r, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integer_products_match_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = small_pair(&mut r);
        let b = small_pair(&mut r);
        let ha = homology_oracle(&a.chain_complex());
        let hb = homology_oracle(&b.chain_complex());
        let hp = homology_oracle(&product_pair(&a, &b).chain_complex());
        let predicted = kunneth_prediction(&ha, &hb);
        for k in 0..hp.len().max(predicted.len()) {
            let got = hp.get(k).cloned().unwrap_or_else(HomologyGroup::zero);
            let want = predicted.get(k).cloned().unwrap_or_else(HomologyGroup::zero);
            prop_assert_eq!(got, want, "degree {}", k);
        }
    }

    #[test]
    fn twisted_products_satisfy_kunneth(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = small_pair(&mut r);
        let b = small_pair(&mut r);
        let g = random_system(&mut r, &a.total);
        let h = random_system(&mut r, &b.total);
        let report = kunneth_check(&a, &g, &b, &h);
        prop_assert!(report.ok, "{}", report.summary());
    }

    #[test]
    fn cap_commutes_with_cross_up_to_sign(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = small_pair(&mut r);
        let b = small_pair(&mut r);
        let (ga, gb) = (random_sign_system(&mut r, &a.total), random_sign_system(&mut r, &b.total));
        let (ka, kb) = (random_sign_system(&mut r, &a.total), random_sign_system(&mut r, &b.total));
        let (da, db) = (a.total.dim() as usize, b.total.dim() as usize);
        let (q, s) = (r.gen_range(0..=da), r.gen_range(0..=db));
        let (p1, p2) = (r.gen_range(0..=q), r.gen_range(0..=s));
        let xi = random_cycle(&mut r, &twisted_chain_complex(&a, &ga, true), q);
        let eta = random_cycle(&mut r, &twisted_chain_complex(&b, &gb, true), s);
        let u = random_cycle(&mut r, &twisted_cochain_complex(&SimplicialPair::absolute(a.total.clone()), &ka, false), p1);
        let v = random_cycle(&mut r, &twisted_cochain_complex(&SimplicialPair::absolute(b.total.clone()), &kb, false), p2);
        let fa = Factor { pair: &a, chains: &ga, cochains: &ka };
        let fb = Factor { pair: &b, chains: &gb, cochains: &kb };
        let check = cap_cross_check(fa, &xi, &u, fb, &eta, &v).unwrap();
        let expected_sign = if ((q - p1) * p2) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(check.sign, expected_sign);
        prop_assert!(check.homologous);
    }
}

#[test]
fn rank_two_systems_are_rejected_by_the_cap_cross_check() {
    let s1 = SimplicialPair::absolute(pdpair::complex::circle());
    let two = EdgeSystem::trivial(2);
    let one = EdgeSystem::trivial(1);
    let c = twisted_chain_complex(&s1, &one, true);
    let k = twisted_cochain_complex(&s1, &one, false);
    let xi = pdpair::duality::CycleClass::zero(&c, 1);
    let u = pdpair::duality::CycleClass::zero(&k, 0);
    let bad = Factor {
        pair: &s1,
        chains: &two,
        cochains: &one,
    };
    let good = Factor {
        pair: &s1,
        chains: &one,
        cochains: &one,
    };
    assert!(cap_cross_check(bad, &xi, &u, good, &xi, &u).is_err());
}
