//! Künneth formula and cap/cross compatibility for products of pairs.

use serde::{Deserialize, Serialize};

use crate::complex::{product_pair, SimplicialPair};
use crate::error::DualityError;
use crate::group::EdgeSystem;
use crate::linalg::HomologyGroup;

use super::products::{cap_elements, cross_chain, cross_cochain};
use super::twisted::{twisted_chain_complex, twisted_cochain_complex, CycleClass};

/// `A ⊗ B` for finitely generated abelian groups.
pub fn tensor_groups(a: &HomologyGroup, b: &HomologyGroup) -> HomologyGroup {
    let mut torsion = Vec::new();
    for t in &b.torsion {
        torsion.extend(std::iter::repeat_n(t.clone(), a.free_rank));
    }
    for t in &a.torsion {
        torsion.extend(std::iter::repeat_n(t.clone(), b.free_rank));
    }
    for s in &a.torsion {
        for t in &b.torsion {
            torsion.push(s.gcd(t));
        }
    }
    HomologyGroup::new(a.free_rank * b.free_rank, torsion)
}

/// `Tor(A, B)` for finitely generated abelian groups.
pub fn tor_groups(a: &HomologyGroup, b: &HomologyGroup) -> HomologyGroup {
    let torsion = a
        .torsion
        .iter()
        .flat_map(|s| b.torsion.iter().map(move |t| s.gcd(t)))
        .collect();
    HomologyGroup::new(0, torsion)
}

/// Direct sum.
pub fn sum_groups(groups: impl IntoIterator<Item = HomologyGroup>) -> HomologyGroup {
    let mut free = 0;
    let mut torsion = Vec::new();
    for g in groups {
        free += g.free_rank;
        torsion.extend(g.torsion);
    }
    HomologyGroup::new(free, torsion)
}

/// `⊕_{i+j=k} Hᵢ ⊗ Hⱼ ⊕ ⊕_{i+j=k-1} Tor(Hᵢ, Hⱼ)` for every `k`.
pub fn kunneth_prediction(ha: &[HomologyGroup], hb: &[HomologyGroup]) -> Vec<HomologyGroup> {
    let top = (ha.len() + hb.len()).saturating_sub(1);
    (0..top.max(1))
        .map(|k| {
            let mut parts = Vec::new();
            for (i, a) in ha.iter().enumerate() {
                for (j, b) in hb.iter().enumerate() {
                    if i + j == k {
                        parts.push(tensor_groups(a, b));
                    }
                    if i + j + 1 == k {
                        parts.push(tor_groups(a, b));
                    }
                }
            }
            sum_groups(parts)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethDegree {
    pub degree: usize,
    pub computed: HomologyGroup,
    pub predicted: HomologyGroup,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethReport {
    pub factor_homology: [Vec<HomologyGroup>; 2],
    pub degrees: Vec<KunnethDegree>,
    pub ok: bool,
}

impl KunnethReport {
    pub fn summary(&self) -> String {
        let mut s = format!("kunneth: {}", if self.ok { "ok" } else { "mismatch" });
        for d in &self.degrees {
            s.push_str(&format!(
                "\nH_{}: computed {} predicted {}{}",
                d.degree,
                d.computed,
                d.predicted,
                if d.matches { "" } else { "  <-- differs" }
            ));
        }
        s
    }
}

/// Compares the twisted homology of `(A, B) × (C, D)` with coefficients
/// `G ⊠ H` against the Künneth formula built from the factors.
pub fn kunneth_check(a: &SimplicialPair, g: &EdgeSystem, b: &SimplicialPair, h: &EdgeSystem) -> KunnethReport {
    let ha = twisted_chain_complex(a, g, true).homology_all();
    let hb = twisted_chain_complex(b, h, true).homology_all();
    let p = product_pair(a, b);
    let gh = g.product(h, &p.total, b.total.vertex_count());
    let hp = twisted_chain_complex(&p, &gh, true).homology_all();
    let predicted = kunneth_prediction(&ha, &hb);
    let top = hp.len().max(predicted.len());
    let degrees: Vec<KunnethDegree> = (0..top)
        .map(|k| {
            let computed = hp.get(k).cloned().unwrap_or_else(HomologyGroup::zero);
            let predicted = predicted.get(k).cloned().unwrap_or_else(HomologyGroup::zero);
            KunnethDegree {
                degree: k,
                matches: computed == predicted,
                computed,
                predicted,
            }
        })
        .collect();
    KunnethReport {
        ok: degrees.iter().all(|d| d.matches),
        factor_homology: [ha, hb],
        degrees,
    }
}

/// One factor of a cap/cross comparison: a pair with rank-one systems for its
/// chains and its cochains.
#[derive(Clone, Copy, Debug)]
pub struct Factor<'a> {
    pub pair: &'a SimplicialPair,
    pub chains: &'a EdgeSystem,
    pub cochains: &'a EdgeSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapCrossCheck {
    pub sign: i64,
    pub lhs: CycleClass,
    pub rhs: CycleClass,
    /// `lhs = sign · rhs` as chains.
    pub chain_level_equal: bool,
    /// `lhs - sign · rhs` is a boundary.
    pub homologous: bool,
}

/// Evaluates `(ξ × η) ∩ (a × b)` and `(ξ ∩ a) × (η ∩ b)` on the product and
/// compares them with the sign `(-1)^{(q - q₁) r₁}`.
pub fn cap_cross_check(
    fa: Factor<'_>,
    xi: &CycleClass,
    a: &CycleClass,
    fb: Factor<'_>,
    eta: &CycleClass,
    b: &CycleClass,
) -> Result<CapCrossCheck, DualityError> {
    for s in [fa.chains, fa.cochains, fb.chains, fb.cochains] {
        if s.rank() != 1 {
            return Err(DualityError::Invalid(
                "cap/cross comparison needs rank-one systems".into(),
            ));
        }
    }
    if a.degree > xi.degree || b.degree > eta.degree {
        return Err(DualityError::Invalid("cochain degree exceeds chain degree".into()));
    }
    let (xa, xb) = (&fa.pair.total, &fb.pair.total);
    let nb = xb.vertex_count();
    let p = product_pair(fa.pair, fb.pair);
    let g_h = fa.chains.product(fb.chains, &p.total, nb);
    let g1_h1 = fa.cochains.product(fb.cochains, &p.total, nb);

    let ca = twisted_chain_complex(fa.pair, fa.chains, true);
    let cb = twisted_chain_complex(fb.pair, fb.chains, true);
    let ct = twisted_chain_complex(&p, &g_h, true);
    let ka = twisted_cochain_complex(&SimplicialPair::absolute(xa.clone()), fa.cochains, false);
    let kb = twisted_cochain_complex(&SimplicialPair::absolute(xb.clone()), fb.cochains, false);
    let kt = twisted_cochain_complex(&SimplicialPair::absolute(p.total.clone()), &g1_h1, false);

    let cross = cross_chain(&ca, xa, xi, 1, &cb, xb, eta, 1, &ct, &p.total)?;
    let cocross = cross_cochain(&ka, xa, a, 1, &kb, xb, b, fb.cochains, &kt, &p.total);
    let tl = twisted_chain_complex(&p, &g_h.tensor(&g1_h1), true);
    let lhs = cap_elements(&p.total, &ct, &cross, &g_h, &kt, &cocross, &g1_h1, &tl);

    let caa = twisted_chain_complex(fa.pair, &fa.chains.tensor(fa.cochains), true);
    let cbb = twisted_chain_complex(fb.pair, &fb.chains.tensor(fb.cochains), true);
    let left = cap_elements(xa, &ca, xi, fa.chains, &ka, a, fa.cochains, &caa);
    let right = cap_elements(xb, &cb, eta, fb.chains, &kb, b, fb.cochains, &cbb);
    let rhs = cross_chain(&caa, xa, &left, 1, &cbb, xb, &right, 1, &tl, &p.total)?;

    let e = (xi.degree - a.degree) * b.degree;
    let sign = if e % 2 == 0 { 1 } else { -1 };
    let scaled: Vec<_> = rhs
        .coeffs
        .iter()
        .map(|c| if sign > 0 { c.clone() } else { -c })
        .collect();
    let diff: Vec<_> = lhs.coeffs.iter().zip(&scaled).map(|(x, y)| x - y).collect();
    let chain_level_equal = diff.iter().all(|d| d.is_zero());
    let homologous = chain_level_equal
        || tl
            .realized()
            .homology_basis(tl.realized_degree(lhs.degree))
            .is_boundary(&diff);
    Ok(CapCrossCheck {
        sign,
        lhs,
        rhs,
        chain_level_equal,
        homologous,
    })
}
