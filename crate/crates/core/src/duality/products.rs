//! Chain-level cap, cup and cross products and the reversal involution.
//!
//! Cap and cup use the Alexander–Whitney front and back faces. For a
//! `q`-simplex `σ`, a `q`-chain coefficient `c ∈ G_{σ₀}` and an `m`-cochain
//! `φ` with values in `H`,
//! `σ·c ∩ φ = (G(σ₀→σ_m) c ⊗ H(σ₀→σ_m) φ(σ[0..m])) · σ[m..q]`,
//! and `(φ ∪ ψ)(σ) = φ(σ[0..p]) ⊗ H(σ_p→σ₀) ψ(σ[p..p+q])`.
//! As maps of complexes the cap with a cycle is scaled by
//! `(-1)^{m(m+1)/2}` and the cap with a cocycle of degree `k` on `(k+j)`-chains
//! by `(-1)^{kj}`; with these signs both commute with the differentials.

use crate::complex::{shuffles, Simplex, SimplicialComplex, SimplicialPair};
use crate::error::DualityError;
use crate::group::EdgeSystem;
use crate::linalg::{chain_map_padded, ChainMap, Int, SparseIntMatrix};

use super::twisted::{twisted_chain_complex, twisted_cochain_complex, CycleClass, TwistedComplex, Variance};

fn apply(m: Option<&SparseIntMatrix>, x: &[Int]) -> Vec<Int> {
    match m {
        None => x.to_vec(),
        Some(m) => m.mul_vec(x),
    }
}

fn entries(m: Option<&SparseIntMatrix>, r: usize) -> Vec<(usize, usize, Int)> {
    match m {
        None => (0..r).map(|j| (j, j, Int::ONE)).collect(),
        Some(m) => m.entries().to_vec(),
    }
}

fn edge_transport(sys: &EdgeSystem, a: usize, b: usize) -> Option<&SparseIntMatrix> {
    if a == b {
        None
    } else {
        sys.transport(a, b)
    }
}

fn sign_pow(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{m(m+1)/2}`.
pub fn cap_sign(m: usize) -> i64 {
    sign_pow(m * (m + 1) / 2)
}

fn block(v: &[Int], r: usize, k: usize) -> &[Int] {
    &v[k * r..(k + 1) * r]
}

fn simplex_at(x: &SimplicialComplex, p: usize, i: usize) -> &Simplex {
    &x.simplices(p)[i]
}

/// A cap product with a fixed class, as a map of realized complexes.
#[derive(Clone, Debug)]
pub struct CapMap {
    pub map: ChainMap,
    pub source: TwistedComplex,
    pub target: TwistedComplex,
}

/// Matrix of `φ ↦ c ∩ φ` from `C^m(H)` to `C_{q-m}(G ⊗ H)` for a fixed `q`-chain `c`.
fn fixed_chain_matrix(
    x: &SimplicialComplex,
    cc: &TwistedComplex,
    c: &CycleClass,
    g: &EdgeSystem,
    fc: &TwistedComplex,
    h: &EdgeSystem,
    tc: &TwistedComplex,
    m: usize,
) -> SparseIntMatrix {
    let q = c.degree;
    let (rg, rh) = (g.rank(), h.rank());
    let mut trips = Vec::new();
    if m <= q {
        for (k, &si) in cc.basis(q).iter().enumerate() {
            let coeff = block(&c.coeffs, rg, k);
            if coeff.iter().all(Int::is_zero) {
                continue;
            }
            let s = simplex_at(x, q, si);
            let front = x.index_of(&s.slice(0, m)).expect("face");
            let back = x.index_of(&s.slice(m, q)).expect("face");
            let (Some(col), Some(row)) = (fc.position(m, front), tc.position(q - m, back)) else {
                continue;
            };
            let (v0, vm) = (s.vertices()[0], s.vertices()[m]);
            let moved = apply(edge_transport(g, v0, vm), coeff);
            let hm = entries(edge_transport(h, v0, vm), rh);
            for (jg, a) in moved.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i, j, v) in &hm {
                    trips.push((row * rg * rh + jg * rh + i, col * rh + j, a * v));
                }
            }
        }
    }
    SparseIntMatrix::from_triplets(tc.group_rank(q.saturating_sub(m)), fc.group_rank(m), trips)
}

/// Matrix of `ξ ↦ ξ ∩ u` from `C_p(G)` to `C_{p-k}(G ⊗ H)` for a fixed `k`-cochain `u`.
fn fixed_cochain_matrix(
    x: &SimplicialComplex,
    uc: &TwistedComplex,
    u: &CycleClass,
    h: &EdgeSystem,
    cc: &TwistedComplex,
    g: &EdgeSystem,
    tc: &TwistedComplex,
    p: usize,
) -> SparseIntMatrix {
    let k = u.degree;
    let (rg, rh) = (g.rank(), h.rank());
    let mut trips = Vec::new();
    if p >= k {
        for (col, &si) in cc.basis(p).iter().enumerate() {
            let s = simplex_at(x, p, si);
            let front = x.index_of(&s.slice(0, k)).expect("face");
            let back = x.index_of(&s.slice(k, p)).expect("face");
            let (Some(fpos), Some(row)) = (uc.position(k, front), tc.position(p - k, back)) else {
                continue;
            };
            let val = block(&u.coeffs, rh, fpos);
            if val.iter().all(Int::is_zero) {
                continue;
            }
            let (v0, vk) = (s.vertices()[0], s.vertices()[k]);
            let w = apply(edge_transport(h, v0, vk), val);
            for (i, j, a) in entries(edge_transport(g, v0, vk), rg) {
                for (jh, b) in w.iter().enumerate() {
                    if !b.is_zero() {
                        trips.push((row * rg * rh + i * rh + jh, col * rg + j, &a * b));
                    }
                }
            }
        }
    }
    SparseIntMatrix::from_triplets(tc.group_rank(p.saturating_sub(k)), cc.group_rank(p), trips)
}

/// Unsigned cap product of a chain with a cochain, landing in `tc`.
pub fn cap_elements(
    x: &SimplicialComplex,
    cc: &TwistedComplex,
    c: &CycleClass,
    g: &EdgeSystem,
    fc: &TwistedComplex,
    phi: &CycleClass,
    h: &EdgeSystem,
    tc: &TwistedComplex,
) -> CycleClass {
    let m = phi.degree;
    let mat = fixed_chain_matrix(x, cc, c, g, fc, h, tc, m);
    CycleClass {
        degree: c.degree.saturating_sub(m),
        variance: Variance::Chain,
        coeffs: mat.mul_vec(&phi.coeffs),
    }
}

/// Cap product with an `n`-cycle `z` of `zc` (coefficients in `o`):
/// `C^{n-k}(X[, Y]; B) → C_k(X[, Y]; O ⊗ B)`.
pub fn cap_with_cycle(
    space: &SimplicialPair,
    zc: &TwistedComplex,
    z: &CycleClass,
    o: &EdgeSystem,
    b: &EdgeSystem,
    source_relative: bool,
    target_relative: bool,
) -> Result<CapMap, DualityError> {
    if z.variance != Variance::Chain || !zc.is_closed(z) {
        return Err(DualityError::NotACycle);
    }
    let n = z.degree;
    let source = twisted_cochain_complex(space, b, source_relative);
    let target = twisted_chain_complex(space, &o.tensor(b), target_relative);
    let x = &space.total;
    let dim = x.dim().max(0) as usize;
    let mats: Vec<SparseIntMatrix> = (0..=n.min(dim))
        .map(|m| fixed_chain_matrix(x, zc, z, o, &source, b, &target, m).scale(&Int::from(cap_sign(m))))
        .collect();
    let map = chain_map_padded(&source.realized().shift(n as i64), target.realized(), |k| {
        let m = n as i64 - k;
        if k < 0 || m < 0 || m as usize >= mats.len() {
            SparseIntMatrix::zeros(0, 0)
        } else {
            mats[m as usize].clone()
        }
    })?;
    Ok(CapMap { map, source, target })
}

/// Cap product with a `k`-cocycle `u` of `uc` (coefficients in `o2`):
/// `C_{k+j}(X, Y; B) → C_j(X; B ⊗ O₂)`.
pub fn cap_with_cocycle(
    space: &SimplicialPair,
    uc: &TwistedComplex,
    u: &CycleClass,
    o2: &EdgeSystem,
    b: &EdgeSystem,
) -> Result<CapMap, DualityError> {
    if u.variance != Variance::Cochain || !uc.is_closed(u) {
        return Err(DualityError::NotACocycle);
    }
    let k = u.degree;
    let source = twisted_chain_complex(space, b, true);
    let target = twisted_chain_complex(space, &b.tensor(o2), false);
    let x = &space.total;
    let map = chain_map_padded(&source.realized().shift(-(k as i64)), target.realized(), |j| {
        if j < 0 {
            return SparseIntMatrix::zeros(0, 0);
        }
        let j = j as usize;
        fixed_cochain_matrix(x, uc, u, o2, &source, b, &target, j + k).scale(&Int::from(sign_pow(k * j)))
    })?;
    Ok(CapMap { map, source, target })
}

/// Cup product of cochains `φ ∈ fa` (coefficients `g`) and `ψ ∈ fb`
/// (coefficients `h`), landing in `ft` (coefficients `g ⊗ h`).
pub fn cup(
    x: &SimplicialComplex,
    fa: &TwistedComplex,
    phi: &CycleClass,
    g: &EdgeSystem,
    fb: &TwistedComplex,
    psi: &CycleClass,
    h: &EdgeSystem,
    ft: &TwistedComplex,
) -> CycleClass {
    let (p, q) = (phi.degree, psi.degree);
    let (rg, rh) = (g.rank(), h.rank());
    let mut out = vec![Int::ZERO; ft.group_rank(p + q)];
    for (k, &si) in ft.basis(p + q).iter().enumerate() {
        let s = simplex_at(x, p + q, si);
        let front = x.index_of(&s.slice(0, p)).expect("face");
        let back = x.index_of(&s.slice(p, p + q)).expect("face");
        let (Some(fp), Some(bp)) = (fa.position(p, front), fb.position(q, back)) else {
            continue;
        };
        let a = block(&phi.coeffs, rg, fp);
        let (v0, vp) = (s.vertices()[0], s.vertices()[p]);
        let b = apply(edge_transport(h, vp, v0), block(&psi.coeffs, rh, bp));
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let slot = &mut out[k * rg * rh + i * rh + j];
                *slot = slot.add_mul(ai, bj);
            }
        }
    }
    CycleClass {
        degree: p + q,
        variance: Variance::Cochain,
        coeffs: out,
    }
}

/// Reorders a `G ⊗ H` vector into `H ⊗ G`.
pub fn swap_factors(v: &[Int], rg: usize, rh: usize) -> Vec<Int> {
    let r = rg * rh;
    let mut out = vec![Int::ZERO; v.len()];
    for (k, chunk) in v.chunks(r).enumerate() {
        for i in 0..rg {
            for j in 0..rh {
                out[k * r + j * rg + i] = chunk[i * rh + j].clone();
            }
        }
    }
    out
}

/// Shuffle cross product `a × b` of chains on two pairs, landing in `tc`, a
/// chain complex of the product pair whose vertex `(x, y)` is `x * nb + y`.
pub fn cross_chain(
    ca: &TwistedComplex,
    xa: &SimplicialComplex,
    a: &CycleClass,
    ra: usize,
    cb: &TwistedComplex,
    xb: &SimplicialComplex,
    b: &CycleClass,
    rb: usize,
    tc: &TwistedComplex,
    product: &SimplicialComplex,
) -> Result<CycleClass, DualityError> {
    let (q, r) = (a.degree, b.degree);
    let nb = xb.vertex_count();
    let mut out = vec![Int::ZERO; tc.group_rank(q + r)];
    let sh = shuffles(q, r);
    for (ka, &ia) in ca.basis(q).iter().enumerate() {
        let va = block(&a.coeffs, ra, ka);
        if va.iter().all(Int::is_zero) {
            continue;
        }
        let sa = simplex_at(xa, q, ia).vertices();
        for (kb, &ib) in cb.basis(r).iter().enumerate() {
            let vb = block(&b.coeffs, rb, kb);
            if vb.iter().all(Int::is_zero) {
                continue;
            }
            let sb = simplex_at(xb, r, ib).vertices();
            for s in &sh {
                let verts: Vec<usize> = s.path.iter().map(|&(i, j)| sa[i] * nb + sb[j]).collect();
                let idx = product
                    .index_of(&Simplex::from_sorted(verts))
                    .ok_or(crate::error::ComplexError::ProductMismatch)?;
                let Some(pos) = tc.position(q + r, idx) else {
                    continue;
                };
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        let slot = &mut out[(pos * ra + i) * rb + j];
                        let xy = x * y;
                        *slot = if s.sign > 0 { &*slot + &xy } else { &*slot - &xy };
                    }
                }
            }
        }
    }
    Ok(CycleClass {
        degree: q + r,
        variance: Variance::Chain,
        coeffs: out,
    })
}

/// Cochain cross product `a × b = p₁*a ∪ p₂*b` on the product complex.
pub fn cross_cochain(
    fa: &TwistedComplex,
    xa: &SimplicialComplex,
    a: &CycleClass,
    ra: usize,
    fb: &TwistedComplex,
    xb: &SimplicialComplex,
    b: &CycleClass,
    hb: &EdgeSystem,
    ft: &TwistedComplex,
    product: &SimplicialComplex,
) -> CycleClass {
    let (p, q) = (a.degree, b.degree);
    let nb = xb.vertex_count();
    let rb = hb.rank();
    let mut out = vec![Int::ZERO; ft.group_rank(p + q)];
    for (k, &si) in ft.basis(p + q).iter().enumerate() {
        let v = simplex_at(product, p + q, si).vertices();
        let xs: Vec<usize> = v.iter().map(|u| u / nb).collect();
        let ys: Vec<usize> = v.iter().map(|u| u % nb).collect();
        let front: Vec<usize> = xs[..=p].to_vec();
        let back: Vec<usize> = ys[p..].to_vec();
        if front.windows(2).any(|w| w[0] == w[1]) || back.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let (Some(ia), Some(ib)) = (
            xa.index_of(&Simplex::from_sorted(front)),
            xb.index_of(&Simplex::from_sorted(back)),
        ) else {
            continue;
        };
        let (Some(fp), Some(bp)) = (fa.position(p, ia), fb.position(q, ib)) else {
            continue;
        };
        let va = block(&a.coeffs, ra, fp);
        let vb = apply(edge_transport(hb, ys[p], ys[0]), block(&b.coeffs, rb, bp));
        for (i, x) in va.iter().enumerate() {
            for (j, y) in vb.iter().enumerate() {
                let slot = &mut out[(k * ra + i) * rb + j];
                *slot = slot.add_mul(x, y);
            }
        }
    }
    CycleClass {
        degree: p + q,
        variance: Variance::Cochain,
        coeffs: out,
    }
}

/// `θ(σ) = (-1)^{p(p+1)/2} σ∘θ_p`, where `σ∘θ_p` is `σ` with its vertices in
/// reverse order, rewritten in the canonical basis with its coefficient moved
/// from `σ_p` back to `σ₀`.
pub fn theta_map(space: &SimplicialPair, sys: &EdgeSystem, relative: bool) -> Result<ChainMap, DualityError> {
    let tc = twisted_chain_complex(space, sys, relative);
    let x = &space.total;
    let r = sys.rank();
    let dim = x.dim().max(0) as usize;
    let maps = (0..=dim)
        .map(|p| {
            let mut trips = Vec::new();
            for (k, &si) in tc.basis(p).iter().enumerate() {
                let v = simplex_at(x, p, si).vertices();
                let reversed: Vec<usize> = v.iter().rev().copied().collect();
                let inversions = (0..=p)
                    .map(|i| (i + 1..=p).filter(|&j| reversed[i] > reversed[j]).count())
                    .sum::<usize>();
                let sign = cap_sign(p) * sign_pow(inversions);
                // coefficient of σ∘θ_p sits at σ_p; carry it along σ₀ → σ_p and back
                let there = SparseIntMatrix::identity(r);
                let there = match edge_transport(sys, v[0], v[p]) {
                    Some(t) => t.mul(&there)?,
                    None => there,
                };
                let back = match edge_transport(sys, v[p], v[0]) {
                    Some(t) => t.mul(&there)?,
                    None => there,
                };
                for (i, j, val) in back.entries() {
                    trips.push((k * r + i, k * r + j, val * &Int::from(sign)));
                }
            }
            Ok(SparseIntMatrix::from_triplets(
                tc.group_rank(p),
                tc.group_rank(p),
                trips,
            ))
        })
        .collect::<Result<Vec<_>, DualityError>>()?;
    Ok(ChainMap::new(tc.realized().clone(), tc.realized().clone(), maps)?)
}
