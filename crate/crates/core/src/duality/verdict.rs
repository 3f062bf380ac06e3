//! Deciding the three cap-product conditions for a pair.

use serde::{Deserialize, Serialize};

use crate::complex::{manifold_dimension, SimplicialComplex, SimplicialPair};
use crate::error::{DualityError, GroupError};
use crate::group::{
    low_index_tables, orientation_systems, permutation_system, presentation, simplify, todd_coxeter_simplified,
    EdgeSystem, GroupPresentation, DEFAULT_MAX_COSETS,
};
use crate::linalg::{ChainMap, HomologyGroup};

use super::products::cap_with_cycle;
use super::twisted::{twisted_chain_complex, ClassFile, CycleClass, TwistedComplex, Variance};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Undecided,
    NotApplicable,
}

impl Status {
    pub fn holds(self) -> bool {
        matches!(self, Status::Holds | Status::NotApplicable)
    }

    /// Conjunction: a failure dominates, then undecided.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Undecided, _) | (_, Undecided) => Undecided,
            (NotApplicable, x) => x,
            (Holds, _) => Holds,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Undecided => "undecided",
            Status::NotApplicable => "n/a",
        };
        f.write_str(s)
    }
}

/// Tuning knobs for the coefficient search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Cap on cosets when enumerating the whole fundamental group.
    pub max_cosets: usize,
    /// Largest `|π₁| × #simplices` for which the regular representation is used.
    pub lambda_budget: usize,
    /// Largest index of the finite quotients tried as witnesses.
    pub witness_index: usize,
    pub witness_node_limit: usize,
    pub max_witnesses: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_cosets: DEFAULT_MAX_COSETS,
            lambda_budget: 100_000,
            witness_index: 5,
            witness_node_limit: 200_000,
            max_witnesses: 64,
        }
    }
}

/// A coefficient system under which a cap map is not a quasi-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub coefficients: String,
    pub rank: usize,
    /// Nonzero homology of the mapping cone.
    pub cone_homology: Vec<(i64, HomologyGroup)>,
}

/// Verdict on one condition, possibly assembled from several components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub condition: u8,
    pub status: Status,
    /// How the status was reached.
    pub method: String,
    /// The cap map is a quasi-isomorphism with constant integer coefficients.
    pub integer_duality: bool,
    /// Only integer coefficients and finitely many finite quotients were checked.
    pub integer_only: bool,
    pub checked: Vec<String>,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ConditionVerdict>,
}

impl ConditionVerdict {
    fn not_applicable(condition: u8, why: &str) -> Self {
        ConditionVerdict {
            condition,
            status: Status::NotApplicable,
            method: why.into(),
            integer_duality: true,
            integer_only: false,
            checked: Vec::new(),
            witness: None,
            components: Vec::new(),
        }
    }

    fn merge(condition: u8, parts: Vec<ConditionVerdict>) -> Self {
        if parts.len() == 1 {
            let mut v = parts.into_iter().next().expect("one part");
            v.condition = condition;
            return v;
        }
        let status = parts.iter().fold(Status::NotApplicable, |s, p| s.and(p.status));
        let witness = parts
            .iter()
            .find(|p| p.status == Status::Fails)
            .and_then(|p| p.witness.clone());
        ConditionVerdict {
            condition,
            status,
            method: format!("{} components", parts.len()),
            integer_duality: parts.iter().all(|p| p.integer_duality),
            integer_only: parts.iter().any(|p| p.integer_only),
            checked: Vec::new(),
            witness,
            components: parts,
        }
    }
}

fn witness_of(sys: &EdgeSystem, cone: Vec<(i64, HomologyGroup)>) -> Witness {
    Witness {
        coefficients: sys.label().to_string(),
        rank: sys.rank(),
        cone_homology: cone,
    }
}

/// Runs the coefficient search for a cap map over a connected `space`.
///
/// Integer coefficients come first. A simply connected space is then
/// settled. Otherwise permutation modules of small finite quotients are tried
/// as potential counterexamples, and if the fundamental group is finite and
/// small enough the regular representation settles the question.
///
/// `certificate` names a structural reason (such as being a compact
/// combinatorial manifold with the given class) under which the integer check
/// already implies the condition for every system.
pub fn check_condition(
    condition: u8,
    space: &SimplicialComplex,
    certificate: Option<&str>,
    build: &dyn Fn(&EdgeSystem) -> Result<ChainMap, DualityError>,
    opts: &VerifyOptions,
) -> Result<ConditionVerdict, DualityError> {
    let mut verdict = ConditionVerdict {
        condition,
        status: Status::Undecided,
        method: String::new(),
        integer_duality: false,
        integer_only: true,
        checked: vec!["trivial".into()],
        witness: None,
        components: Vec::new(),
    };
    let trivial = EdgeSystem::trivial(1);
    let cert = build(&trivial)?.is_quasi_iso();
    verdict.integer_duality = cert.quasi_iso;
    if !cert.quasi_iso {
        verdict.status = Status::Fails;
        verdict.integer_only = false;
        verdict.method = "integer coefficients".into();
        verdict.witness = Some(witness_of(&trivial, cert.failures));
        return Ok(verdict);
    }
    let base = *space
        .vertices()
        .first()
        .ok_or(DualityError::Invalid("empty space".into()))?;
    let pres = presentation(space, base)?;
    let simp = simplify(&pres);
    if simp.generator_count == 0 {
        verdict.status = Status::Holds;
        verdict.integer_only = false;
        verdict.method = "simply connected".into();
        return Ok(verdict);
    }
    if let Some(reason) = certificate {
        verdict.status = Status::Holds;
        verdict.integer_only = false;
        verdict.method = reason.into();
        return Ok(verdict);
    }
    let (tables, _) = low_index_tables(&pres, &simp, opts.witness_index, opts.witness_node_limit);
    let mut degrees = Vec::new();
    for t in tables.iter().take(opts.max_witnesses) {
        let sys = permutation_system(&pres, t)?.edge_system(&pres)?;
        let cert = build(&sys)?.is_quasi_iso();
        verdict.checked.push(sys.label().to_string());
        if !cert.quasi_iso {
            verdict.status = Status::Fails;
            verdict.integer_only = false;
            verdict.method = format!("finite quotient of index {}", t.degree);
            verdict.witness = Some(witness_of(&sys, cert.failures));
            return Ok(verdict);
        }
        degrees.push(t.degree);
    }
    let Some(d) = finite_order(&pres, &simp, opts)? else {
        verdict.method = "fundamental group infinite or too large to enumerate; integer coefficients only".into();
        return Ok(verdict);
    };
    if !degrees.contains(&d) {
        if d.saturating_mul(space.total_count()) > opts.lambda_budget {
            verdict.method = format!("fundamental group of order {d} exceeds the regular-representation budget");
            return Ok(verdict);
        }
        let table = todd_coxeter_simplified(&pres, &simp, &[], opts.max_cosets)?;
        let sys = permutation_system(&pres, &table)?.edge_system(&pres)?;
        let cert = build(&sys.clone().with_label(format!("regular({d})")))?.is_quasi_iso();
        verdict.checked.push(format!("regular({d})"));
        if !cert.quasi_iso {
            verdict.status = Status::Fails;
            verdict.integer_only = false;
            verdict.method = format!("regular representation of a group of order {d}");
            verdict.witness = Some(witness_of(&sys.with_label(format!("regular({d})")), cert.failures));
            return Ok(verdict);
        }
    }
    verdict.status = Status::Holds;
    verdict.integer_only = false;
    verdict.method = format!("regular representation of a group of order {d}");
    Ok(verdict)
}

/// Order of the edge-path group, `None` when it is infinite or beyond the coset cap.
fn finite_order(
    pres: &GroupPresentation,
    simp: &crate::group::SimplifiedPresentation,
    opts: &VerifyOptions,
) -> Result<Option<usize>, DualityError> {
    let mut reduced = pres.clone();
    reduced.generator_count = simp.generator_count;
    reduced.relators = simp.relators.clone();
    if reduced.abelianization().free_rank > 0 {
        return Ok(None);
    }
    match todd_coxeter_simplified(pres, simp, &[], opts.max_cosets) {
        Ok(t) => Ok(Some(t.degree)),
        Err(GroupError::CosetLimit(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Copies the coefficients of `c` into another complex with the same vertex
/// ids, dropping simplices that are not in its basis.
pub fn transfer_class(
    from: &TwistedComplex,
    from_x: &SimplicialComplex,
    c: &CycleClass,
    to: &TwistedComplex,
    to_x: &SimplicialComplex,
) -> CycleClass {
    let r = from.rank();
    let mut out = CycleClass::zero(to, c.degree);
    for (k, &i) in from.basis(c.degree).iter().enumerate() {
        let s = &from_x.simplices(c.degree)[i];
        let Some(j) = to_x.index_of(s) else { continue };
        let Some(pos) = to.position(c.degree, j) else {
            continue;
        };
        for t in 0..r {
            out.coeffs[pos * r + t] = c.coeffs[k * r + t].clone();
        }
    }
    out
}

/// The three conditions for a given orientation system and class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub conditions: [ConditionVerdict; 3],
}

impl PairCheck {
    pub fn status(&self) -> Status {
        self.conditions
            .iter()
            .fold(Status::NotApplicable, |s, c| s.and(c.status))
    }

    pub fn integer_duality(&self) -> bool {
        self.conditions.iter().all(|c| c.integer_duality)
    }

    pub fn integer_only(&self) -> bool {
        self.conditions.iter().any(|c| c.integer_only)
    }
}

/// Checks the three conditions for `(X, Y)` with orientation system `o` and
/// the relative `n`-cycle `z` of `zc`, component by component.
pub fn check_pair_with_class(
    pair: &SimplicialPair,
    o: &EdgeSystem,
    zc: &TwistedComplex,
    z: &CycleClass,
    opts: &VerifyOptions,
) -> Result<PairCheck, DualityError> {
    if !zc.is_closed(z) {
        return Err(DualityError::NotACycle);
    }
    let mut parts: [Vec<ConditionVerdict>; 3] = Default::default();
    for comp in pair.total.components() {
        let sub = pair.sub.intersection(&comp);
        let cp = SimplicialPair::new(comp.clone(), sub)?;
        let czc = twisted_chain_complex(&cp, o, true);
        let cz = transfer_class(zc, &pair.total, z, &czc, &comp);
        let [a, b, c] = check_connected(&cp, o, &czc, &cz, opts)?;
        parts[0].push(a);
        parts[1].push(b);
        parts[2].push(c);
    }
    let [p1, p2, p3] = parts;
    Ok(PairCheck {
        conditions: [
            ConditionVerdict::merge(1, p1),
            ConditionVerdict::merge(2, p2),
            ConditionVerdict::merge(3, p3),
        ],
    })
}

fn check_connected(
    pair: &SimplicialPair,
    o: &EdgeSystem,
    zc: &TwistedComplex,
    z: &CycleClass,
    opts: &VerifyOptions,
) -> Result<[ConditionVerdict; 3], DualityError> {
    const MANIFOLD: &str = "compact combinatorial manifold";
    let cert = (manifold_dimension(pair) == Some(z.degree)).then_some(MANIFOLD);
    let c1 = check_condition(
        1,
        &pair.total,
        cert,
        &|b| Ok(cap_with_cycle(pair, zc, z, o, b, false, true)?.map),
        opts,
    )?;
    let c2 = check_condition(
        2,
        &pair.total,
        cert,
        &|b| Ok(cap_with_cycle(pair, zc, z, o, b, true, false)?.map),
        opts,
    )?;
    let c3 = if pair.sub.is_empty() {
        ConditionVerdict::not_applicable(3, "empty boundary")
    } else {
        let abs_pair = SimplicialPair::absolute(pair.total.clone());
        let abs = twisted_chain_complex(&abs_pair, o, false);
        let za = transfer_class(zc, &pair.total, z, &abs, &pair.total);
        let dz = CycleClass {
            degree: z.degree - 1,
            variance: Variance::Chain,
            coeffs: abs.differential(z.degree, &za.coeffs),
        };
        let mut parts = Vec::new();
        for comp in pair.sub.components() {
            let cp = SimplicialPair::absolute(comp.clone());
            let czc = twisted_chain_complex(&cp, o, false);
            let cz = transfer_class(&abs, &pair.total, &dz, &czc, &comp);
            let closed = manifold_dimension(&cp) == Some(z.degree - 1);
            parts.push(check_condition(
                3,
                &comp,
                closed.then_some(MANIFOLD),
                &|b| Ok(cap_with_cycle(&cp, &czc, &cz, o, b, false, false)?.map),
                opts,
            )?);
        }
        ConditionVerdict::merge(3, parts)
    };
    Ok([c1, c2, c3])
}

/// Candidate fundamental classes in degree `n`: `±g` when the free part of
/// `H_n` has rank one, nothing otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FundamentalSearch {
    /// `H_n` has no free part.
    None,
    /// Free rank one, generated by this cycle (torsion may be present).
    Unique(CycleClass),
    /// Free rank at least two.
    Ambiguous(usize),
}

pub fn find_fundamental_classes(zc: &TwistedComplex, n: usize) -> FundamentalSearch {
    let basis = zc.realized().homology_basis(zc.realized_degree(n));
    match basis.free.len() {
        0 => FundamentalSearch::None,
        1 => FundamentalSearch::Unique(CycleClass {
            degree: n,
            variance: zc.variance(),
            coeffs: basis.free[0].clone(),
        }),
        r => FundamentalSearch::Ambiguous(r),
    }
}

/// Overall answer for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PoincarePair,
    NotPoincarePair,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::PoincarePair => "Poincaré pair",
            Verdict::NotPoincarePair => "not a Poincaré pair",
            Verdict::Undecided => "undecided",
        })
    }
}

impl From<Status> for Verdict {
    fn from(s: Status) -> Self {
        match s {
            Status::Holds | Status::NotApplicable => Verdict::PoincarePair,
            Status::Fails => Verdict::NotPoincarePair,
            Status::Undecided => Verdict::Undecided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationInfo {
    pub label: String,
    /// Sign carried by each generator of the edge-path presentation.
    pub signs: Vec<i64>,
}

/// Full report for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub verdict: Verdict,
    pub formal_dimension: Option<usize>,
    pub orientation: Option<OrientationInfo>,
    pub fundamental_class: Option<ClassFile>,
    pub conditions: Vec<ConditionVerdict>,
    /// All three conditions hold with integer coefficients.
    pub integer_duality: bool,
    /// Some condition was only checked against finitely many coefficient systems.
    pub integer_only: bool,
    pub candidates_tried: usize,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<DualityReport>,
}

impl DualityReport {
    pub fn condition(&self, i: u8) -> Option<&ConditionVerdict> {
        self.conditions.iter().find(|c| c.condition == i)
    }

    pub fn condition_statuses(&self) -> [Status; 3] {
        let get = |i| self.condition(i).map_or(Status::Undecided, |c| c.status);
        [get(1), get(2), get(3)]
    }

    fn empty(notes: Vec<String>) -> Self {
        DualityReport {
            verdict: Verdict::NotPoincarePair,
            formal_dimension: None,
            orientation: None,
            fundamental_class: None,
            conditions: Vec::new(),
            integer_duality: false,
            integer_only: false,
            candidates_tried: 0,
            notes,
            components: Vec::new(),
        }
    }

    /// One line per condition, for terminal output.
    pub fn summary(&self) -> String {
        let mut s = format!("verdict: {}", self.verdict);
        if let Some(n) = self.formal_dimension {
            s.push_str(&format!("\nformal dimension: {n}"));
        }
        if let Some(o) = &self.orientation {
            s.push_str(&format!("\norientation system: {}", o.label));
        }
        for c in &self.conditions {
            s.push_str(&format!(
                "\ncondition ({}): {:<10} {}",
                c.condition,
                c.status.to_string(),
                c.method
            ));
            if let Some(w) = &c.witness {
                let cone: Vec<String> = w.cone_homology.iter().map(|(d, h)| format!("H_{d}={h}")).collect();
                s.push_str(&format!(" [witness {}: {}]", w.coefficients, cone.join(", ")));
            }
        }
        s.push_str(&format!("\ninteger duality: {}", self.integer_duality));
        if self.integer_only {
            s.push_str("\nnote: integer coefficients only");
        }
        for n in &self.notes {
            s.push_str(&format!("\nnote: {n}"));
        }
        s
    }
}

fn score(c: &PairCheck) -> (usize, usize) {
    let h = c.conditions.iter().filter(|v| v.status.holds()).count();
    let u = c.conditions.iter().filter(|v| v.status == Status::Undecided).count();
    (h, u)
}

/// Searches orientation systems and fundamental classes for `(X, Y)` and
/// decides the three conditions for the first candidate that satisfies them,
/// or reports the best candidate otherwise.
pub fn verify_pair(pair: &SimplicialPair, opts: &VerifyOptions) -> Result<DualityReport, DualityError> {
    if pair.total.is_empty() {
        return Err(DualityError::Invalid("empty complex".into()));
    }
    let comps = pair.total.components();
    if comps.len() > 1 {
        let reports = comps
            .iter()
            .map(|c| verify_pair(&SimplicialPair::new(c.clone(), pair.sub.intersection(c))?, opts))
            .collect::<Result<Vec<_>, _>>()?;
        let dims: Vec<Option<usize>> = reports.iter().map(|r| r.formal_dimension).collect();
        let same_dim = dims.windows(2).all(|w| w[0] == w[1]);
        let mut verdict = reports.iter().fold(Verdict::PoincarePair, |v, r| match (v, r.verdict) {
            (Verdict::NotPoincarePair, _) | (_, Verdict::NotPoincarePair) => Verdict::NotPoincarePair,
            (Verdict::Undecided, _) | (_, Verdict::Undecided) => Verdict::Undecided,
            _ => Verdict::PoincarePair,
        });
        let mut notes = vec![format!("{} components checked separately", reports.len())];
        if !same_dim && verdict == Verdict::PoincarePair {
            verdict = Verdict::NotPoincarePair;
            notes.push("components have different formal dimensions".into());
        }
        return Ok(DualityReport {
            verdict,
            formal_dimension: if same_dim { dims[0] } else { None },
            orientation: None,
            fundamental_class: None,
            conditions: Vec::new(),
            integer_duality: reports.iter().all(|r| r.integer_duality),
            integer_only: reports.iter().any(|r| r.integer_only),
            candidates_tried: reports.iter().map(|r| r.candidates_tried).sum(),
            notes,
            components: reports,
        });
    }
    let base = pair.total.vertices()[0];
    let pres = presentation(&pair.total, base)?;
    let dim = pair.total.dim() as usize;
    let mut best: Option<(PairCheck, DualityReport)> = None;
    let mut tried = 0;
    let mut notes = Vec::new();
    for sys in orientation_systems(&pres) {
        let o = sys.edge_system(&pres)?;
        let zc = twisted_chain_complex(pair, &o, true);
        for n in (0..=dim).rev() {
            let z = match find_fundamental_classes(&zc, n) {
                FundamentalSearch::Unique(z) => z,
                FundamentalSearch::Ambiguous(r) => {
                    notes.push(format!("H_{n} with {} coefficients has free rank {r}", sys.label));
                    continue;
                }
                FundamentalSearch::None => continue,
            };
            tried += 1;
            let check = check_pair_with_class(pair, &o, &zc, &z, opts)?;
            let report = DualityReport {
                verdict: check.status().into(),
                formal_dimension: Some(n),
                orientation: Some(OrientationInfo {
                    label: sys.label.clone(),
                    signs: sys.signs().unwrap_or_default(),
                }),
                fundamental_class: Some(zc.to_class_file(&z)),
                conditions: check.conditions.to_vec(),
                integer_duality: check.integer_duality(),
                integer_only: check.integer_only(),
                candidates_tried: 0,
                notes: Vec::new(),
                components: Vec::new(),
            };
            if report.verdict == Verdict::PoincarePair {
                return Ok(finish(report, tried, notes));
            }
            if best.as_ref().is_none_or(|(b, _)| score(&check) > score(b)) {
                best = Some((check, report));
            }
        }
    }
    match best {
        Some((_, report)) => {
            let mut report = finish(report, tried, notes);
            if tried > 1 && report.verdict == Verdict::NotPoincarePair {
                report
                    .notes
                    .push("every candidate class fails; the best candidate is shown".into());
            }
            if report.verdict == Verdict::Undecided && tried > 1 {
                report
                    .notes
                    .push("no candidate was refuted decisively; the best candidate is shown".into());
            }
            Ok(report)
        }
        None => {
            notes.push("no degree has relative homology of free rank one".into());
            Ok(DualityReport::empty(notes))
        }
    }
}

fn finish(mut report: DualityReport, tried: usize, notes: Vec<String>) -> DualityReport {
    report.candidates_tried = tried;
    report.notes.extend(notes);
    if report.integer_duality && report.verdict == Verdict::NotPoincarePair {
        report
            .notes
            .push("duality holds with integer coefficients but fails for a twisted system".into());
    }
    report
}

/// Checks conditions for a pair with a fixed orientation system given by signs
/// on the generators of the default presentation and a fixed class.
pub fn verify_pair_with(
    pair: &SimplicialPair,
    signs: Option<&[i64]>,
    class: Option<&ClassFile>,
    opts: &VerifyOptions,
) -> Result<DualityReport, DualityError> {
    if signs.is_none() && class.is_none() {
        return verify_pair(pair, opts);
    }
    let base = *pair
        .total
        .vertices()
        .first()
        .ok_or(DualityError::Invalid("empty complex".into()))?;
    let pres = presentation(&pair.total, base)?;
    let sys = match signs {
        Some(s) => crate::group::LocalSystem::from_signs(&pres, s, "given")?,
        None => crate::group::LocalSystem::trivial(&pres, 1),
    };
    let o = sys.edge_system(&pres)?;
    let zc = twisted_chain_complex(pair, &o, true);
    let z = match class {
        Some(c) => zc.from_class_file(c)?,
        None => {
            let dim = pair.total.dim() as usize;
            (0..=dim)
                .rev()
                .find_map(|n| match find_fundamental_classes(&zc, n) {
                    FundamentalSearch::Unique(z) => Some(z),
                    _ => None,
                })
                .ok_or(DualityError::Invalid("no fundamental class candidate".into()))?
        }
    };
    let check = check_pair_with_class(pair, &o, &zc, &z, opts)?;
    Ok(finish(
        DualityReport {
            verdict: check.status().into(),
            formal_dimension: Some(z.degree),
            orientation: Some(OrientationInfo {
                label: sys.label.clone(),
                signs: sys.signs().unwrap_or_default(),
            }),
            fundamental_class: Some(zc.to_class_file(&z)),
            conditions: check.conditions.to_vec(),
            integer_duality: check.integer_duality(),
            integer_only: check.integer_only(),
            candidates_tried: 1,
            notes: Vec::new(),
            components: Vec::new(),
        },
        1,
        Vec::new(),
    ))
}

/// `±1` when `z` represents `± g` modulo torsion and boundaries.
pub fn class_sign(zc: &TwistedComplex, z: &CycleClass, g: &CycleClass) -> Option<i64> {
    let basis = zc.realized().homology_basis(zc.realized_degree(z.degree));
    let cz = basis.coordinates(&z.coeffs)?;
    let cg = basis.coordinates(&g.coeffs)?;
    if cz.free.len() != 1 || cg.free.len() != 1 {
        return None;
    }
    if cz.free[0] == cg.free[0] {
        Some(1)
    } else if cz.free[0] == -&cg.free[0] {
        Some(-1)
    } else {
        None
    }
}
