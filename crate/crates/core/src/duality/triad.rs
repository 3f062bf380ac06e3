//! Poincaré triads.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialPair, SimplicialTriad};
use crate::error::DualityError;
use crate::group::{presentation, LocalSystem};

use super::twisted::{twisted_chain_complex, CycleClass, Variance};
use super::verdict::{
    check_pair_with_class, class_sign, find_fundamental_classes, transfer_class, ConditionVerdict, DualityReport,
    FundamentalSearch, Status, Verdict, VerifyOptions,
};

/// One of the two pieces `(Yᵢ, Y₀)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub name: String,
    pub status: Status,
    pub conditions: Vec<ConditionVerdict>,
    /// Coordinate of the restricted class on the generator of each component.
    pub signs: Vec<i64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadReport {
    pub verdict: Verdict,
    pub formal_dimension: Option<usize>,
    pub pair: DualityReport,
    pub pieces: Vec<PieceReport>,
    /// Both pieces use the plain restriction of `∂[X]`, so the global sign is `+1`.
    pub global_sign: i64,
}

impl TriadReport {
    pub fn summary(&self) -> String {
        let mut s = format!("triad verdict: {}\n{}", self.verdict, self.pair.summary());
        for p in &self.pieces {
            s.push_str(&format!("\npiece {}: {} signs {:?}", p.name, p.status, p.signs));
            for c in &p.conditions {
                s.push_str(&format!("\n  condition ({}): {} {}", c.condition, c.status, c.method));
            }
            for n in &p.notes {
                s.push_str(&format!("\n  note: {n}"));
            }
        }
        s
    }
}

/// Checks `(X, Y₁ ∪ Y₂)` and both `(Yᵢ, Y₀)` at one dimension lower, the
/// latter with the restrictions of `∂[X]` as fundamental classes.
pub fn verify_triad(triad: &SimplicialTriad, opts: &VerifyOptions) -> Result<TriadReport, DualityError> {
    let boundary = triad.boundary();
    let pair = SimplicialPair::new(triad.total.clone(), boundary)?;
    let report = super::verdict::verify_pair(&pair, opts)?;
    let fail = |report: DualityReport| TriadReport {
        verdict: if report.verdict == Verdict::Undecided {
            Verdict::Undecided
        } else {
            Verdict::NotPoincarePair
        },
        formal_dimension: report.formal_dimension,
        pair: report,
        pieces: Vec::new(),
        global_sign: 1,
    };
    let (Verdict::PoincarePair | Verdict::Undecided, Some(n), Some(o), Some(cf)) = (
        report.verdict,
        report.formal_dimension,
        report.orientation.clone(),
        report.fundamental_class.clone(),
    ) else {
        return Ok(fail(report));
    };
    if n == 0 {
        return Ok(fail(report));
    }
    let pres = presentation(&pair.total, pair.total.vertices()[0])?;
    let sys = LocalSystem::from_signs(&pres, &o.signs, o.label.clone())?.edge_system(&pres)?;
    let zc = twisted_chain_complex(&pair, &sys, true);
    let z = zc.from_class_file(&cf)?;
    let abs = twisted_chain_complex(&SimplicialPair::absolute(pair.total.clone()), &sys, false);
    let za = transfer_class(&zc, &pair.total, &z, &abs, &pair.total);
    let dz = CycleClass {
        degree: n - 1,
        variance: Variance::Chain,
        coeffs: abs.differential(n, &za.coeffs),
    };
    let corner = triad.corner();
    let mut pieces = Vec::new();
    let mut status = report.verdict.into_status();
    for (name, piece) in [("Y1", &triad.sub1), ("Y2", &triad.sub2)] {
        if piece.is_empty() {
            pieces.push(PieceReport {
                name: name.into(),
                status: Status::NotApplicable,
                conditions: Vec::new(),
                signs: Vec::new(),
                notes: vec!["empty piece".into()],
            });
            continue;
        }
        let pp = SimplicialPair::new(piece.clone(), corner.intersection(piece))?;
        let pc = twisted_chain_complex(&pp, &sys, true);
        let zi = transfer_class(&abs, &pair.total, &dz, &pc, piece);
        let mut notes = Vec::new();
        let mut signs = Vec::new();
        if !pc.is_closed(&zi) {
            notes.push("restriction of the boundary class is not a relative cycle".into());
            status = status.and(Status::Fails);
            pieces.push(PieceReport {
                name: name.into(),
                status: Status::Fails,
                conditions: Vec::new(),
                signs,
                notes,
            });
            continue;
        }
        let mut sign_ok = true;
        for comp in piece.components() {
            let cp = SimplicialPair::new(comp.clone(), pp.sub.intersection(&comp))?;
            let cc = twisted_chain_complex(&cp, &sys, true);
            let zc_i = transfer_class(&pc, piece, &zi, &cc, &comp);
            match find_fundamental_classes(&cc, n - 1) {
                FundamentalSearch::Unique(g) => match class_sign(&cc, &zc_i, &g) {
                    Some(s) => signs.push(s),
                    None => sign_ok = false,
                },
                _ => sign_ok = false,
            }
        }
        if !sign_ok {
            notes.push("restriction is not a generator on every component".into());
        }
        let check = check_pair_with_class(&pp, &sys, &pc, &zi, opts)?;
        let piece_status = if sign_ok { check.status() } else { Status::Fails };
        status = status.and(piece_status);
        pieces.push(PieceReport {
            name: name.into(),
            status: piece_status,
            conditions: check.conditions.to_vec(),
            signs,
            notes,
        });
    }
    Ok(TriadReport {
        verdict: status.into(),
        formal_dimension: Some(n),
        pair: report,
        pieces,
        global_sign: 1,
    })
}

impl Verdict {
    pub fn into_status(self) -> Status {
        match self {
            Verdict::PoincarePair => Status::Holds,
            Verdict::NotPoincarePair => Status::Fails,
            Verdict::Undecided => Status::Undecided,
        }
    }
}
