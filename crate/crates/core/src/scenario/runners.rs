use serde::Serialize;
use serde_json::Value;

use super::Facts;
use crate::complex::{
    boundary_sphere, circle, cone, double, klein_bottle, mobius_band, poincare_sphere, product, puncture,
    real_projective_plane, rp3, simplex, SimplicialComplex, SimplicialPair, SimplicialTriad,
};
use crate::duality::{
    cap_cross_check, find_fundamental_classes, kunneth_check, twisted_chain_complex, twisted_cochain_complex,
    verify_pair, verify_triad, CycleClass, DualityReport, Factor, FundamentalSearch, Status, VerifyOptions,
};
use crate::error::DualityError;
use crate::group::{
    build_cover, low_index_tables, orientation_systems, permutation_system, presentation, simplify, todd_coxeter,
    transfer_chain, EdgeSystem, LocalSystem, DEFAULT_MAX_COSETS,
};
use crate::linalg::HomologyGroup;

fn put(f: &mut Facts, key: &str, v: impl Serialize) {
    f.insert(key.to_string(), serde_json::to_value(v).expect("facts serialize"));
}

fn groups(h: &[HomologyGroup]) -> Vec<String> {
    h.iter().map(ToString::to_string).collect()
}

fn integer_homology(x: &SimplicialComplex) -> Vec<HomologyGroup> {
    twisted_chain_complex(&SimplicialPair::absolute(x.clone()), &EdgeSystem::trivial(1), false).homology_all()
}

fn status_name(s: Status) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

fn put_report(f: &mut Facts, prefix: &str, r: &DualityReport) {
    let p = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    put(f, &p("verdict"), r.verdict);
    put(f, &p("formal_dimension"), r.formal_dimension);
    put(f, &p("orientation"), r.orientation.as_ref().map(|o| o.label.clone()));
    put(f, &p("integer_duality"), r.integer_duality);
    for c in &r.conditions {
        f.insert(p(&format!("condition_{}", c.condition)), status_name(c.status));
    }
}

fn point_pair(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, (0..n).map(|v| vec![v])).expect("points")
}

/// `A × S^{n-1}` and its cone, where `A` is the punctured Poincaré sphere.
/// Returns the punctured sphere (with its boundary) and `(cone, base)`.
pub fn theorem_a_pair(n: usize) -> Result<(SimplicialPair, SimplicialPair), DualityError> {
    let a = puncture(&poincare_sphere(), None)?;
    let sphere = match n {
        1 => point_pair(2),
        2 => circle(),
        _ => boundary_sphere(n),
    };
    let y = product(&a.total, &sphere);
    Ok((a, cone(&y)?))
}

pub fn theorem_a(n: usize) -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    let sigma = poincare_sphere();
    let pres = presentation(&sigma, 0)?;
    put(&mut f, "poincare_sphere.homology", groups(&integer_homology(&sigma)));
    put(
        &mut f,
        "poincare_sphere.fundamental_group_order",
        todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS)?.degree,
    );

    let (a, x) = theorem_a_pair(n)?;
    let ha = integer_homology(&a.total);
    let acyclic = ha[0] == HomologyGroup::free(1) && ha[1..].iter().all(HomologyGroup::is_zero);
    put(&mut f, "punctured_sphere.reduced_homology_zero", acyclic);

    // an independent look at the witness: the 5-sheeted cover of A
    let pa = presentation(&a.total, a.total.vertices()[0])?;
    let (tables, _) = low_index_tables(&pa, &simplify(&pa), 5, 200_000);
    if let Some(t) = tables.iter().find(|t| t.degree == 5) {
        let abs = SimplicialPair::absolute(a.total.clone());
        let cover = build_cover(&abs, t)?;
        put(
            &mut f,
            "five_fold_cover.euler_characteristic",
            cover.total_pair.total.euler_characteristic(),
        );
        let cover_h = integer_homology(&cover.total_pair.total);
        let sys = permutation_system(&pa, t)?.edge_system(&pa)?;
        let twisted_h = twisted_chain_complex(&abs, &sys, false).homology_all();
        put(&mut f, "five_fold_cover.homology", groups(&cover_h));
        put(
            &mut f,
            "five_fold_cover.matches_permutation_homology",
            cover_h == twisted_h,
        );
    }

    let px = presentation(&x.total, x.total.vertices()[0])?;
    put(&mut f, "cone.simply_connected", simplify(&px).generator_count == 0);
    let report = verify_pair(&x, &VerifyOptions::default())?;
    put_report(&mut f, "pair", &report);
    if let Some(c3) = report.condition(3) {
        put(
            &mut f,
            "pair.condition_3.witness",
            c3.witness.as_ref().map(|w| w.coefficients.clone()),
        );
        put(
            &mut f,
            "pair.condition_3.witness_cone_nonzero",
            c3.witness
                .as_ref()
                .is_some_and(|w| w.cone_homology.iter().any(|(_, h)| !h.is_zero())),
        );
    }
    Ok(f)
}

pub fn wall_conjecture() -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    let opts = VerifyOptions::default();
    let pair = puncture(&rp3(), None)?;
    let pres = presentation(&pair.total, pair.total.vertices()[0])?;
    put(
        &mut f,
        "fundamental_group_order",
        todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS)?.degree,
    );
    let boundary = verify_pair(&SimplicialPair::absolute(pair.sub.clone()), &opts)?;
    put_report(&mut f, "boundary", &boundary);
    let report = verify_pair(&pair, &opts)?;
    put_report(&mut f, "pair", &report);
    let [c1, c2, c3] = report.condition_statuses();
    let predicted = boundary.verdict == crate::duality::Verdict::PoincarePair && c1 == Status::Holds;
    put(&mut f, "boundary_and_condition_1_predict_poincare_pair", predicted);
    put(
        &mut f,
        "prediction_confirmed",
        predicted && report.verdict == crate::duality::Verdict::PoincarePair,
    );
    put(&mut f, "condition_2_agrees_with_condition_1", c1 == c2);
    put(&mut f, "condition_3_holds", c3 == Status::Holds);
    Ok(f)
}

fn double_vs_triad(f: &mut Facts, name: &str, triad: &SimplicialTriad) -> Result<(), DualityError> {
    let opts = VerifyOptions::default();
    let (d, _) = crate::complex::double_triad(triad)?;
    put(
        f,
        &format!("{name}.double.euler_characteristic"),
        d.total.euler_characteristic(),
    );
    let dv = verify_pair(&d, &opts)?.verdict;
    let tv = verify_triad(triad, &opts)?.verdict;
    put(f, &format!("{name}.double.verdict"), dv);
    put(f, &format!("{name}.triad.verdict"), tv);
    put(f, &format!("{name}.agree"), dv == tv);
    Ok(())
}

pub fn doubling() -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    let m = mobius_band();
    let n = m.total.vertex_count();
    double_vs_triad(
        &mut f,
        "mobius",
        &SimplicialTriad::new(m.total.clone(), SimplicialComplex::empty(n), m.sub.clone())?,
    )?;
    let disk = simplex(2);
    let e1 = SimplicialComplex::from_facets(3, vec![vec![0, 1]])?;
    let e23 = SimplicialComplex::from_facets(3, vec![vec![1, 2], vec![0, 2]])?;
    double_vs_triad(&mut f, "disk", &SimplicialTriad::new(disk, e23, e1)?)?;
    let wedge = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3]])?;
    let end = SimplicialComplex::from_facets(4, vec![vec![3]])?;
    double_vs_triad(
        &mut f,
        "wedge",
        &SimplicialTriad::new(wedge, SimplicialComplex::empty(4), end)?,
    )?;
    Ok(f)
}

pub fn covering() -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    let opts = VerifyOptions::default();
    let base = SimplicialPair::absolute(real_projective_plane());
    let report = verify_pair(&base, &opts)?;
    put_report(&mut f, "base", &report);
    let pres = presentation(&base.total, 0)?;
    let table = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS)?;
    let cover = build_cover(&base, &table)?;
    put(&mut f, "cover.sheets", cover.sheet_count);
    put(
        &mut f,
        "cover.euler_characteristic",
        cover.total_pair.total.euler_characteristic(),
    );
    put_report(&mut f, "cover", &verify_pair(&cover.total_pair, &opts)?);

    let (Some(o), Some(cf)) = (&report.orientation, &report.fundamental_class) else {
        return Ok(f);
    };
    let sys = LocalSystem::from_signs(&pres, &o.signs, o.label.clone())?.edge_system(&pres)?;
    let zc = twisted_chain_complex(&base, &sys, true);
    let z = zc.from_class_file(cf)?;
    let tr = transfer_chain(&cover, &sys, true)?;
    let lifted = tr.map(2).expect("degree two").mul_vec(&z.coeffs);
    let basis = tr.target().homology_basis(2);
    put(&mut f, "transfer.free_rank", basis.free.len());
    put(&mut f, "transfer.is_cycle", basis.is_cycle(&lifted));
    let coords = basis.coordinates(&lifted);
    put(
        &mut f,
        "transfer.generates",
        coords.is_some_and(|c| c.free.len() == 1 && c.free[0].abs().is_one()),
    );
    put(
        &mut f,
        "infinite_projective_space",
        "not constructible: infinite complex",
    );
    Ok(f)
}

/// A named product fixture for the Künneth check.
pub struct KunnethFixture {
    pub name: &'static str,
    pub a: SimplicialPair,
    pub g: EdgeSystem,
    pub b: SimplicialPair,
    pub h: EdgeSystem,
}

fn sign_system(x: &SimplicialComplex) -> Result<EdgeSystem, DualityError> {
    let pres = presentation(x, x.vertices()[0])?;
    let systems = orientation_systems(&pres);
    let s = systems
        .get(1)
        .ok_or(DualityError::Invalid("no nontrivial sign system".into()))?;
    Ok(s.edge_system(&pres)?)
}

pub fn kunneth_fixture_list() -> Result<Vec<KunnethFixture>, DualityError> {
    let triv = EdgeSystem::trivial(1);
    let s1 = SimplicialPair::absolute(circle());
    let sign = sign_system(&s1.total)?;
    let rp = SimplicialPair::absolute(real_projective_plane());
    let rp_o = sign_system(&rp.total)?;
    let kb = SimplicialPair::absolute(klein_bottle());
    let kb_o = {
        // the orientation character of the Klein bottle
        let pres = presentation(&kb.total, 0)?;
        let mut found = None;
        for s in orientation_systems(&pres) {
            let e = s.edge_system(&pres)?;
            if twisted_chain_complex(&kb, &e, false).homology(2).free_rank == 1 && !e.is_trivial() {
                found = Some(e);
                break;
            }
        }
        found.ok_or(DualityError::Invalid(
            "Klein bottle has no orientation character".into(),
        ))?
    };
    let interval = SimplicialPair::new(simplex(1), point_pair(2))?;
    Ok(vec![
        KunnethFixture {
            name: "circle_x_circle",
            a: s1.clone(),
            g: triv.clone(),
            b: s1.clone(),
            h: triv.clone(),
        },
        KunnethFixture {
            name: "sign_circle_x_circle",
            a: s1.clone(),
            g: sign.clone(),
            b: s1.clone(),
            h: triv.clone(),
        },
        KunnethFixture {
            name: "sign_circle_x_sign_circle",
            a: s1.clone(),
            g: sign.clone(),
            b: s1.clone(),
            h: sign.clone(),
        },
        KunnethFixture {
            name: "rp2_x_circle",
            a: rp.clone(),
            g: triv.clone(),
            b: s1.clone(),
            h: triv.clone(),
        },
        KunnethFixture {
            name: "rp2_x_rp2",
            a: rp.clone(),
            g: triv.clone(),
            b: rp.clone(),
            h: triv.clone(),
        },
        KunnethFixture {
            name: "twisted_rp2_x_interval",
            a: rp.clone(),
            g: rp_o,
            b: interval.clone(),
            h: triv.clone(),
        },
        KunnethFixture {
            name: "klein_x_sign_circle",
            a: kb.clone(),
            g: triv.clone(),
            b: s1.clone(),
            h: sign.clone(),
        },
        KunnethFixture {
            name: "twisted_klein_x_circle",
            a: kb,
            g: kb_o,
            b: s1,
            h: triv.clone(),
        },
        KunnethFixture {
            name: "interval_x_sign_circle",
            a: interval,
            g: triv,
            b: SimplicialPair::absolute(circle()),
            h: sign,
        },
    ])
}

fn unique(search: FundamentalSearch) -> Result<CycleClass, DualityError> {
    match search {
        FundamentalSearch::Unique(c) => Ok(c),
        _ => Err(DualityError::Invalid("expected a rank-one group".into())),
    }
}

pub fn kunneth_fixtures() -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    for fx in kunneth_fixture_list()? {
        let r = kunneth_check(&fx.a, &fx.g, &fx.b, &fx.h);
        put(&mut f, &format!("{}.ok", fx.name), r.ok);
        let computed: Vec<HomologyGroup> = r.degrees.iter().map(|d| d.computed.clone()).collect();
        put(&mut f, &format!("{}.homology", fx.name), groups(&computed));
    }
    let triv = EdgeSystem::trivial(1);
    let s1 = SimplicialPair::absolute(circle());
    let circle_chain = twisted_chain_complex(&s1, &triv, true);
    let circle_cochain = twisted_cochain_complex(&s1, &triv, false);
    let xi = unique(find_fundamental_classes(&circle_chain, 1))?;
    let one = unique(find_fundamental_classes(&circle_cochain, 0))?;
    let dual = unique(find_fundamental_classes(&circle_cochain, 1))?;
    let fc = Factor {
        pair: &s1,
        chains: &triv,
        cochains: &triv,
    };
    for (name, a, b) in [
        ("torus_1111", &dual, &dual),
        ("torus_1011", &one, &dual),
        ("torus_1110", &dual, &one),
        ("torus_1010", &one, &one),
    ] {
        let r = cap_cross_check(fc, &xi, a, fc, &xi, b)?;
        put(&mut f, &format!("cap_cross.{name}.sign"), r.sign);
        put(&mut f, &format!("cap_cross.{name}.homologous"), r.homologous);
    }
    let rp = SimplicialPair::absolute(real_projective_plane());
    let rp_o = sign_system(&rp.total)?;
    let rp_chain = twisted_chain_complex(&rp, &rp_o, true);
    let rp_class = unique(find_fundamental_classes(&rp_chain, 2))?;
    let rp_one = unique(find_fundamental_classes(&twisted_cochain_complex(&rp, &triv, false), 0))?;
    let fr = Factor {
        pair: &rp,
        chains: &rp_o,
        cochains: &triv,
    };
    let r = cap_cross_check(fr, &rp_class, &rp_one, fc, &xi, &dual)?;
    put(&mut f, "cap_cross.twisted_rp2_x_circle_2011.sign", r.sign);
    put(&mut f, "cap_cross.twisted_rp2_x_circle_2011.homologous", r.homologous);
    Ok(f)
}

pub fn example_5_2() -> Result<Facts, DualityError> {
    let mut f = Facts::new();
    let opts = VerifyOptions::default();
    let (_, x) = theorem_a_pair(2)?;
    let (d, _) = double(&x)?;
    put(&mut f, "double.homology", groups(&integer_homology(&d.total)));
    let pres = presentation(&d.total, 0)?;
    put(&mut f, "double.abelianization", pres.abelianization().to_string());
    put(
        &mut f,
        "double.fundamental_group_order",
        todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS)?.degree,
    );
    put(&mut f, "double.verdict", verify_pair(&d, &opts)?.verdict);
    let r = verify_pair(&x, &opts)?;
    put(&mut f, "pair.verdict", r.verdict);
    put(&mut f, "pair.condition_3", status_name(r.condition_statuses()[2]));
    Ok(f)
}
