use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use pdpair::complex::{
    boundary_sphere, circle, cone, double, glue, klein_bottle, mobius_band, parse_complex_file, poincare_sphere,
    product, product_pair, puncture, real_projective_plane, rp3, simplex, torus, ComplexFile, SimplicialComplex,
    SimplicialMap, SimplicialPair,
};
use pdpair::duality::{
    find_thom_class, kunneth_check, twisted_chain_complex, twisted_cochain_complex, verify_pair_with, ClassFile,
    Verdict, VerifyOptions,
};
use pdpair::group::{
    build_cover, low_index_tables, orientation_systems, presentation, simplify, todd_coxeter, CosetTable, EdgeSystem,
    GroupPresentation, LocalSystem, Word,
};
use pdpair::linalg::HomologyGroup;
use pdpair::scenario::{run_scenario, theorem_a_pair, ScenarioSpec};

use crate::report::{Environment, Exit, RunReport, Timer};
use crate::{Globals, SystemArgs};

type CmdResult = Result<RunReport, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<ComplexFile, String> {
    parse_complex_file(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: line {}, column {}: {e}", e.line(), e.column()))
}

fn parse_signs(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| match s.trim().parse::<i64>() {
            Ok(v @ (1 | -1)) => Ok(v),
            _ => Err(format!("sign '{s}' is not 1 or -1")),
        })
        .collect()
}

fn options(g: &Globals) -> VerifyOptions {
    VerifyOptions {
        max_cosets: g.max_cosets,
        ..VerifyOptions::default()
    }
}

fn base_presentation(total: &SimplicialComplex) -> Result<GroupPresentation, String> {
    let base = *total.vertices().first().ok_or("empty complex")?;
    presentation(total, base).map_err(err)
}

/// Coefficients chosen on the command line, trivial by default.
fn choose_system(total: &SimplicialComplex, args: &SystemArgs) -> Result<EdgeSystem, String> {
    if args.system.is_none() && args.signs.is_none() && args.orientation.is_none() {
        return Ok(EdgeSystem::trivial(1));
    }
    let pres = base_presentation(total)?;
    let sys = if let Some(path) = &args.system {
        LocalSystem::from_json(&read(path)?, &pres).map_err(err)?
    } else if let Some(s) = &args.signs {
        LocalSystem::from_signs(&pres, &parse_signs(s)?, "signs").map_err(err)?
    } else {
        let k = args.orientation.unwrap_or(0);
        let all = orientation_systems(&pres);
        let count = all.len();
        all.into_iter()
            .nth(k)
            .ok_or_else(|| format!("orientation index {k} out of range; {count} characters exist"))?
    };
    sys.edge_system(&pres).map_err(err)
}

fn sign_system(total: &SimplicialComplex, signs: Option<&str>) -> Result<EdgeSystem, String> {
    choose_system(
        total,
        &SystemArgs {
            signs: signs.map(str::to_string),
            ..SystemArgs::default()
        },
    )
}

fn parse_degrees(text: &str, top: usize) -> Result<Vec<usize>, String> {
    let bad = || format!("bad degree range '{text}'");
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        let b = num(b)?;
        (num(a)?, b.checked_sub(1).ok_or_else(bad)?)
    } else {
        let k = num(text)?;
        (k, k)
    };
    Ok((lo..=hi.min(top)).collect())
}

fn group_json(degree: usize, h: &HomologyGroup) -> Value {
    json!({"degree": degree, "rank": h.free_rank, "torsion": h.torsion, "group": h.to_string()})
}

fn report(
    g: &Globals,
    command: &str,
    arguments: Value,
    timer: Timer,
    result: Value,
    exit: Exit,
    summary: String,
) -> RunReport {
    RunReport {
        command: command.into(),
        arguments,
        steps: timer.finish(),
        result,
        exit,
        environment: Environment {
            version: env!("CARGO_PKG_VERSION"),
            seed: g.seed,
        },
        summary,
    }
}

fn verdict_exit(v: Verdict) -> Exit {
    match v {
        Verdict::PoincarePair => Exit::Ok,
        Verdict::NotPoincarePair => Exit::Negative,
        Verdict::Undecided => Exit::Undecided,
    }
}

pub fn homology(
    g: &Globals,
    file: &Path,
    system: &SystemArgs,
    relative: bool,
    cohomology: bool,
    degrees: Option<&str>,
) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let f = timer.step("load", || load(file))?;
    let pair = if relative {
        f.pair()
    } else {
        f.total().map(SimplicialPair::absolute)
    }
    .map_err(err)?;
    let sys = choose_system(&pair.total, system)?;
    let tc = timer.step("complex", || {
        if cohomology {
            twisted_cochain_complex(&pair, &sys, relative)
        } else {
            twisted_chain_complex(&pair, &sys, relative)
        }
    });
    let all = timer.step("homology", || tc.homology_all());
    let top = all.len().saturating_sub(1);
    let wanted = match degrees {
        Some(d) => parse_degrees(d, top)?,
        None => (0..all.len()).collect(),
    };
    let groups: Vec<Value> = wanted.iter().map(|&p| group_json(p, &all[p])).collect();
    let letter = if cohomology { "H^" } else { "H_" };
    let summary = wanted
        .iter()
        .map(|&p| format!("{letter}{p} = {}", all[p]))
        .collect::<Vec<_>>()
        .join("\n");
    let args = json!({
        "file": file, "relative": relative, "cohomology": cohomology, "degrees": degrees,
        "system": system.system, "signs": system.signs, "orientation": system.orientation,
    });
    let result = json!({"coefficients": sys.label(), "rank": sys.rank(), "groups": groups});
    Ok(report(g, "homology", args, timer, result, Exit::Ok, summary))
}

pub fn verify_pair(
    g: &Globals,
    file: &Path,
    componentwise: bool,
    signs: Option<&str>,
    class: Option<&Path>,
) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let pair = timer.step("load", || load(file).and_then(|f| f.pair().map_err(err)))?;
    if !componentwise && !pair.total.is_connected() {
        return Err("total complex is disconnected; pass --componentwise to decide each component".into());
    }
    let signs = signs.map(parse_signs).transpose()?;
    let class: Option<ClassFile> = class
        .map(|p| read(p).and_then(|t| parse_json(&t, "class file")))
        .transpose()?;
    let opts = options(g);
    let rep = timer.step("verify", || {
        if signs.is_some() || class.is_some() {
            verify_pair_with(&pair, signs.as_deref(), class.as_ref(), &opts)
        } else {
            pdpair::duality::verify_pair(&pair, &opts)
        }
    });
    let rep = rep.map_err(err)?;
    let args = json!({"file": file, "componentwise": componentwise, "signs": signs, "class": class.is_some()});
    let exit = verdict_exit(rep.verdict);
    let summary = rep.summary();
    Ok(report(g, "verify-pair", args, timer, json!(rep), exit, summary))
}

pub fn verify_triad(g: &Globals, file: &Path) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let triad = timer.step("load", || load(file).and_then(|f| f.triad().map_err(err)))?;
    let rep = timer
        .step("verify", || pdpair::duality::verify_triad(&triad, &options(g)))
        .map_err(err)?;
    let exit = verdict_exit(rep.verdict);
    let summary = rep.summary();
    Ok(report(
        g,
        "verify-triad",
        json!({"file": file}),
        timer,
        json!(rep),
        exit,
        summary,
    ))
}

pub fn thom(g: &Globals, file: &Path, degree: Option<usize>) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let pair = timer.step("load", || load(file).and_then(|f| f.pair().map_err(err)))?;
    let top = pair.total.dim().max(0) as usize;
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..=top).collect(),
    };
    let opts = options(g);
    let mut found = Vec::new();
    for k in degrees.iter().copied() {
        if let Some(t) = timer
            .step(&format!("degree {k}"), || find_thom_class(&pair, k, &opts))
            .map_err(err)?
        {
            found.push(t);
        }
    }
    let ks: Vec<usize> = found.iter().map(|t| t.degree).collect();
    let summary = if found.is_empty() {
        format!("no Thom class in degrees {degrees:?}")
    } else {
        found
            .iter()
            .map(|t| format!("Thom class in degree {} with orientation {}", t.degree, t.orientation))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let exit = if found.is_empty() { Exit::Negative } else { Exit::Ok };
    let result = json!({"tested": degrees, "degrees": ks, "classes": found});
    Ok(report(
        g,
        "thom",
        json!({"file": file, "degree": degree}),
        timer,
        result,
        exit,
        summary,
    ))
}

pub enum Construction<'a> {
    Cone(&'a PathBuf),
    Product(&'a PathBuf, &'a PathBuf),
    Double(&'a PathBuf),
    Glue(&'a PathBuf, &'a PathBuf, Option<&'a Path>),
    Puncture(&'a PathBuf, Option<usize>),
    Cover(&'a PathBuf, &'a PathBuf),
    Library(&'a str),
}

fn library(name: &str) -> Result<ComplexFile, String> {
    let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    let c = |c: SimplicialComplex| ComplexFile::from_complex(&c);
    Ok(match name {
        "poincare-sphere" => c(poincare_sphere()),
        "rp3" => c(rp3()),
        "rp2" => c(real_projective_plane()),
        "torus" => c(torus()),
        "klein-bottle" => c(klein_bottle()),
        "circle" => c(circle()),
        "mobius-band" => ComplexFile::from_pair(&mobius_band()),
        _ => {
            if let Some(n) = numbered("simplex-") {
                let sub = boundary_sphere(n);
                let pair = SimplicialPair::new(simplex(n), sub).map_err(err)?;
                ComplexFile::from_pair(&pair)
            } else if let Some(n) = numbered("sphere-") {
                c(boundary_sphere(n + 1))
            } else if let Some(n) = numbered("theorem-a-") {
                let (_, x) = theorem_a_pair(n).map_err(err)?;
                ComplexFile::from_pair(&x)
            } else {
                return Err(format!("unknown library complex '{name}'"));
            }
        }
    })
}

pub fn construct(g: &Globals, op: Construction, output: Option<&Path>) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let (name, args, out) = match op {
        Construction::Cone(f) => {
            let k = load(f)?.total().map_err(err)?;
            (
                "cone",
                json!({"file": f}),
                ComplexFile::from_pair(&cone(&k).map_err(err)?),
            )
        }
        Construction::Product(a, b) => {
            let (fa, fb) = (load(a)?, load(b)?);
            let out = if fa.sub_facets.is_some() || fb.sub_facets.is_some() {
                let (pa, pb) = (fa.pair().map_err(err)?, fb.pair().map_err(err)?);
                ComplexFile::from_pair(&timer.step("product", || product_pair(&pa, &pb)))
            } else {
                let (ca, cb) = (fa.total().map_err(err)?, fb.total().map_err(err)?);
                ComplexFile::from_complex(&timer.step("product", || product(&ca, &cb)))
            };
            ("product", json!({"first": a, "second": b}), out)
        }
        Construction::Double(f) => {
            let pair = load(f)?.pair().map_err(err)?;
            let (d, _) = timer.step("double", || double(&pair)).map_err(err)?;
            ("double", json!({"file": f}), ComplexFile::from_complex(&d.total))
        }
        Construction::Glue(a, b, map) => {
            let (pa, pb) = (load(a)?.pair().map_err(err)?, load(b)?.pair().map_err(err)?);
            let images: Vec<usize> = match map {
                Some(p) => parse_json(&read(p)?, "vertex map")?,
                None => (0..pa.total.vertex_count()).collect(),
            };
            let along = SimplicialMap::new(pa.sub.clone(), pb.sub.clone(), images).map_err(err)?;
            let gl = timer.step("glue", || glue(&pa, &pb, &along)).map_err(err)?;
            (
                "glue",
                json!({"first": a, "second": b, "map": map}),
                ComplexFile::from_complex(&gl.complex),
            )
        }
        Construction::Puncture(f, facet) => {
            let k = load(f)?.total().map_err(err)?;
            let p = puncture(&k, facet).map_err(err)?;
            (
                "puncture",
                json!({"file": f, "facet": facet}),
                ComplexFile::from_pair(&p),
            )
        }
        Construction::Cover(f, t) => {
            let pair = load(f)?.pair().map_err(err)?;
            let table: CosetTable = parse_json(&read(t)?, "coset table")?;
            let cover = timer.step("cover", || build_cover(&pair, &table)).map_err(err)?;
            let out = if pair.sub.is_empty() {
                ComplexFile::from_complex(&cover.total_pair.total)
            } else {
                ComplexFile::from_pair(&cover.total_pair)
            };
            ("cover", json!({"file": f, "table": t}), out)
        }
        Construction::Library(n) => ("library", json!({"name": n}), library(n)?),
    };
    let total = out.total().map_err(err)?;
    let stats = json!({
        "vertices": out.vertices,
        "f_vector": total.f_vector(),
        "euler_characteristic": total.euler_characteristic(),
        "facets": out.facets.len(),
    });
    let summary = format!(
        "{name}: f-vector {:?}, euler characteristic {}",
        total.f_vector(),
        total.euler_characteristic()
    );
    let result = match output {
        Some(path) => {
            fs::write(path, out.to_canonical_json()).map_err(|e| format!("{}: {e}", path.display()))?;
            json!({"output": path, "stats": stats})
        }
        None => json!({"stats": stats, "complex": out}),
    };
    let mut args = args;
    args["op"] = json!(name);
    Ok(report(g, "construct", args, timer, result, Exit::Ok, summary))
}

fn table_json(t: &CosetTable) -> Value {
    json!({"degree": t.degree, "action": t.action})
}

pub fn cover(
    g: &Globals,
    file: &Path,
    index: Option<usize>,
    order: bool,
    subgroup: Option<&str>,
    save_table: Option<&Path>,
    degree: Option<usize>,
) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let total = load(file)?.total().map_err(err)?;
    let pres = timer.step("presentation", || base_presentation(&total))?;
    let simp = simplify(&pres);
    let ab = pres.abelianization();
    let mut result = json!({
        "generators": pres.generator_count,
        "relators": pres.relators.len(),
        "simplified_generators": simp.generator_count,
        "simplified_relators": simp.relators,
        "abelianization": ab.to_string(),
        "presentation_hash": pres.hash(),
    });
    let mut summary = vec![
        format!(
            "presentation: {} generators, {} relators",
            pres.generator_count,
            pres.relators.len()
        ),
        format!(
            "simplified: {} generators, {} relators",
            simp.generator_count,
            simp.relators.len()
        ),
        format!("abelianization: {ab}"),
    ];
    if order {
        let r = timer.step("order", || todd_coxeter(&pres, &[], g.max_cosets));
        match r {
            Ok(t) => {
                result["order"] = json!(t.degree);
                summary.push(format!("order: {}", t.degree));
            }
            Err(e) => {
                result["order"] = Value::Null;
                result["order_note"] = json!(e.to_string());
                summary.push(format!("order: unknown ({e})"));
            }
        }
    }
    let mut to_save: Option<CosetTable> = None;
    if let Some(text) = subgroup {
        let words: Vec<Word> = parse_json(text, "subgroup words")?;
        let t = timer
            .step("subgroup", || todd_coxeter(&pres, &words, g.max_cosets))
            .map_err(err)?;
        summary.push(format!("subgroup index: {}", t.degree));
        result["subgroup_table"] = table_json(&t);
        to_save = Some(t);
    }
    if let Some(k) = index {
        let (tables, exhaustive) = timer.step("low index", || low_index_tables(&pres, &simp, k, 1_000_000));
        let mut by_degree = vec![0usize; k + 1];
        for t in &tables {
            by_degree[t.degree] += 1;
        }
        summary.push(format!(
            "subgroups of index 2..={k}: {:?}{}",
            &by_degree[2.min(k + 1)..],
            if exhaustive { "" } else { " (search truncated)" }
        ));
        result["tables"] = json!(tables.iter().map(table_json).collect::<Vec<_>>());
        result["exhaustive"] = json!(exhaustive);
        if to_save.is_none() {
            if let Some(d) = degree {
                to_save = tables.into_iter().find(|t| t.degree == d);
            }
        }
    }
    if let Some(path) = save_table {
        let t = to_save.ok_or("no table selected; pass --subgroup, or --index with --degree")?;
        let text = serde_json::to_string_pretty(&t).expect("table serializes");
        fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
        result["saved"] = json!(path);
    }
    let args = json!({
        "file": file, "index": index, "order": order, "subgroup": subgroup,
        "save_table": save_table, "degree": degree,
    });
    Ok(report(g, "cover", args, timer, result, Exit::Ok, summary.join("\n")))
}

pub fn scenario(g: &Globals, name: &str, n: Option<usize>) -> CmdResult {
    let spec = ScenarioSpec::new(name, n, g.large).map_err(err)?;
    let mut timer = Timer::new(g.timing);
    let rep = timer.step(&spec.key(), || run_scenario(&spec, g.timing)).map_err(err)?;
    let exit = if rep.ok { Exit::Ok } else { Exit::Mismatch };
    let summary = rep.summary();
    let args = json!({"name": name, "n": spec.n, "large": g.large});
    Ok(report(g, "scenario", args, timer, json!(rep), exit, summary))
}

pub fn kunneth(
    g: &Globals,
    first: &Path,
    second: &Path,
    signs_first: Option<&str>,
    signs_second: Option<&str>,
    relative: bool,
) -> CmdResult {
    let mut timer = Timer::new(g.timing);
    let pair = |f: &Path| -> Result<SimplicialPair, String> {
        let c = load(f)?;
        if relative {
            c.pair().map_err(err)
        } else {
            c.total().map(SimplicialPair::absolute).map_err(err)
        }
    };
    let (a, b) = (pair(first)?, pair(second)?);
    let ga = sign_system(&a.total, signs_first)?;
    let hb = sign_system(&b.total, signs_second)?;
    let rep = timer.step("kunneth", || kunneth_check(&a, &ga, &b, &hb));
    let exit = if rep.ok { Exit::Ok } else { Exit::Negative };
    let summary = rep.summary();
    let args = json!({
        "first": first, "second": second, "signs_first": signs_first,
        "signs_second": signs_second, "relative": relative,
    });
    Ok(report(g, "kunneth", args, timer, json!(rep), exit, summary))
}
