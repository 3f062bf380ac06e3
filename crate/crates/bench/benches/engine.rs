use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pdpair::complex::SimplicialPair;
use pdpair::duality::{
    cap_with_cycle, find_fundamental_classes, twisted_chain_complex, verify_pair, FundamentalSearch, VerifyOptions,
};
use pdpair::group::{simplify, todd_coxeter, EdgeSystem};
use pdpair::linalg::{invariant_factors, smith_form};
use pdpair::scenario::{run_scenario, ScenarioSpec};
use pdpair_bench::{sphere_boundary, sphere_presentation, three_torus_slice, torus_pair, twisted_rp2};

fn snf(c: &mut Criterion) {
    let d3 = sphere_boundary();
    let mut group = c.benchmark_group("snf");
    group.bench_function("invariant_factors/poincare_d3", |b| {
        b.iter(|| invariant_factors(black_box(&d3)))
    });
    group.bench_function("smith_form/poincare_d3", |b| b.iter(|| smith_form(black_box(&d3))));
    group.finish();
}

fn groups(c: &mut Criterion) {
    let pres = sphere_presentation();
    let mut group = c.benchmark_group("group");
    group.bench_function("simplify/poincare", |b| b.iter(|| simplify(black_box(&pres))));
    group.bench_function("todd_coxeter/poincare_order", |b| {
        b.iter(|| todd_coxeter(black_box(&pres), &[], 10_000).expect("finite"))
    });
    group.finish();
}

fn cap(c: &mut Criterion) {
    let mut group = c.benchmark_group("cap");
    let (rp2, o) = twisted_rp2();
    let t = torus_pair();
    let x3 = SimplicialPair::absolute(three_torus_slice());
    let trivial = EdgeSystem::trivial(1);
    for (name, pair, sys, n) in [
        ("rp2_twisted", &rp2, &o, 2),
        ("torus", &t, &trivial, 2),
        ("torus_x_circle", &x3, &trivial, 3),
    ] {
        let zc = twisted_chain_complex(pair, sys, true);
        let FundamentalSearch::Unique(z) = find_fundamental_classes(&zc, n) else {
            panic!("{name} has a fundamental class");
        };
        group.bench_with_input(BenchmarkId::new("cap_with_cycle", name), &z, |b, z| {
            b.iter(|| cap_with_cycle(pair, &zc, z, sys, &trivial, true, false).expect("cycle"))
        });
    }
    group.finish();
}

fn verdicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let (rp2, _) = twisted_rp2();
    let opts = VerifyOptions::default();
    group.bench_function("verify_pair/rp2", |b| {
        b.iter(|| verify_pair(black_box(&rp2), &opts).expect("runs"))
    });
    let spec = ScenarioSpec::new("theorem-a", Some(1), false).expect("registered");
    group.bench_function("scenario/theorem-a", |b| {
        b.iter(|| run_scenario(&spec, false).expect("runs"))
    });
    group.finish();
}

criterion_group!(benches, snf, groups, cap, verdicts);
criterion_main!(benches);
