//! Thom classes through the cap-product criterion.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialPair;
use crate::error::DualityError;
use crate::group::{orientation_systems, presentation, EdgeSystem};

use super::products::cap_with_cocycle;
use super::twisted::{twisted_cochain_complex, ClassFile, CycleClass, TwistedComplex};
use super::verdict::{check_condition, find_fundamental_classes, ConditionVerdict, FundamentalSearch, VerifyOptions};

/// Decides whether `∩u : C_{k+*}(X, Y; B) → C_*(X; B ⊗ O₂)` is a
/// quasi-isomorphism for every system `B`. The verdict carries condition
/// number `0`.
pub fn verify_thom_class(
    pair: &SimplicialPair,
    o2: &EdgeSystem,
    uc: &TwistedComplex,
    u: &CycleClass,
    opts: &VerifyOptions,
) -> Result<ConditionVerdict, DualityError> {
    if !pair.total.is_connected() {
        return Err(DualityError::Invalid(
            "Thom classes are checked on connected complexes".into(),
        ));
    }
    check_condition(
        0,
        &pair.total,
        None,
        &|b| Ok(cap_with_cocycle(pair, uc, u, o2, b)?.map),
        opts,
    )
}

/// A class that passed [`verify_thom_class`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThomClass {
    pub degree: usize,
    pub orientation: String,
    pub signs: Vec<i64>,
    pub class: ClassFile,
    pub verdict: ConditionVerdict,
}

/// Searches orientation systems `O₂` for which `H^k(X, Y; O₂)` has free rank
/// one and tests both generators.
pub fn find_thom_class(
    pair: &SimplicialPair,
    k: usize,
    opts: &VerifyOptions,
) -> Result<Option<ThomClass>, DualityError> {
    if pair.total.is_empty() || !pair.total.is_connected() {
        return Err(DualityError::Invalid(
            "Thom classes are searched on connected complexes".into(),
        ));
    }
    if k as i64 > pair.total.dim() {
        return Ok(None);
    }
    let pres = presentation(&pair.total, pair.total.vertices()[0])?;
    for sys in orientation_systems(&pres) {
        let o2 = sys.edge_system(&pres)?;
        let uc = twisted_cochain_complex(pair, &o2, true);
        let FundamentalSearch::Unique(g) = find_fundamental_classes(&uc, k) else {
            continue;
        };
        for u in [g.clone(), g.neg()] {
            let verdict = verify_thom_class(pair, &o2, &uc, &u, opts)?;
            if verdict.status.holds() {
                return Ok(Some(ThomClass {
                    degree: k,
                    orientation: sys.label.clone(),
                    signs: sys.signs().unwrap_or_default(),
                    class: uc.to_class_file(&u),
                    verdict,
                }));
            }
        }
    }
    Ok(None)
}
