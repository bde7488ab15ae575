//! Schur complexes of a two-term complex `φ: F → G` and the generalized
//! Eagon-Northcott family `C_i(φ)` built from them.
//!
//! `φ` is a [`PolyMap`] between single-summand modules `F ⊗ S(-t_F)` and
//! `G ⊗ S(-t_G)`. Every term below carries the twist forced by homogeneity.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::basis::BasisSpace;
use crate::combin::{multisets, shuffles, subsets, wedge_merge};
use crate::complex::{dual_space, propagate_scalars, ChainMap, GradedComplex, GradedFreeModule, PolyMap, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseMatrix};
use crate::poly::{determinant, Poly, PolyRing};

/// `φ` unpacked: its based source and target and its `g × f` entry matrix.
#[derive(Clone, Debug)]
pub struct ENInput {
    pub phi: PolyMap,
    pub f: usize,
    pub g: usize,
    f_space: BasisSpace,
    g_space: BasisSpace,
    t_f: i64,
    t_g: i64,
    entries: Vec<Vec<Poly>>,
}

impl ENInput {
    pub fn new(phi: &PolyMap) -> Result<Self> {
        let single = |m: &GradedFreeModule| -> Result<(BasisSpace, i64)> {
            match (m.space(), m.twist()) {
                (Some(s), Some(t)) => Ok((s.clone(), t)),
                _ => Err(Error::InvalidInput(format!("expected a single-summand module, got {m:?}"))),
            }
        };
        let (f_space, t_f) = single(&phi.source)?;
        let (g_space, t_g) = single(&phi.target)?;
        let (g, f) = phi.shape();
        let entries = (0..g).map(|r| (0..f).map(|c| phi.entry(r, c)).collect()).collect();
        Ok(ENInput { phi: phi.clone(), f, g, f_space, g_space, t_f, t_g, entries })
    }

    pub fn ring(&self) -> PolyRing {
        self.phi.ring
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r][c]
    }

    /// `det φ_{[g], A}` for a `g`-subset `A` of the source basis.
    fn maximal_minor(&self, cols: &[usize]) -> Poly {
        let m: Vec<Vec<Poly>> =
            (0..self.g).map(|r| cols.iter().map(|&c| self.entries[r][c].clone()).collect()).collect();
        determinant(&m, self.ring().num_vars)
    }
}

/// Which half of `C_i(φ)` a term comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TermKind {
    /// `∧^j F ⊗ Sym^m G`.
    Sym { j: usize, m: usize },
    /// `D^k(G*) ⊗ ∧^w F`.
    Wedge { k: usize, w: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PureSym,
    PureWedge,
    Spliced,
}

#[derive(Clone, Debug)]
pub struct ENComplex {
    pub index: i64,
    pub f: usize,
    pub g: usize,
    pub provenance: Provenance,
    pub complex: GradedComplex,
    /// Kind of the term at each position, lowest first.
    pub kinds: Vec<TermKind>,
}

fn sym_term_space(inp: &ENInput, j: usize, m: usize) -> BasisSpace {
    BasisSpace::tensor(&[BasisSpace::wedge(j, &inp.f_space), BasisSpace::sym(m, &inp.g_space)])
}

fn wedge_term_space(inp: &ENInput, k: usize, w: usize) -> BasisSpace {
    let gd = dual_space(&inp.g_space);
    BasisSpace::tensor(&[BasisSpace::divided(k, &gd), BasisSpace::wedge(w, &inp.f_space)])
}

fn sym_twist(inp: &ENInput, j: usize, m: usize) -> i64 {
    j as i64 * inp.t_f + m as i64 * inp.t_g
}

fn wedge_twist(inp: &ENInput, k: usize, w: usize) -> i64 {
    w as i64 * inp.t_f - (inp.g + k) as i64 * inp.t_g
}

/// `∧^j F ⊗ Sym^m G → ∧^{j-1} F ⊗ Sym^{m+1} G`,
/// `f_C ⊗ n ↦ Σ_s (-1)^s f_{C∖c_s} ⊗ φ(f_{c_s}) n`.
fn sym_diff(inp: &ENInput, j: usize, m: usize) -> Result<PolyMap> {
    let src = sym_term_space(inp, j, m);
    let tgt = sym_term_space(inp, j - 1, m + 1);
    let wsrc = BasisSpace::wedge(j, &inp.f_space);
    let wtgt = BasisSpace::wedge(j - 1, &inp.f_space);
    let ssrc = BasisSpace::sym(m, &inp.g_space);
    let stgt = BasisSpace::sym(m + 1, &inp.g_space);
    let mut entries = Vec::new();
    for (ci, c) in wsrc.labels().iter().enumerate() {
        for (mi, mono) in ssrc.labels().iter().enumerate() {
            let col = src.tensor_index(&[ci, mi]);
            for s in 0..j {
                let mut rest = c.clone();
                let x = rest.remove(s);
                let ri = wtgt.idx(&rest);
                for r in 0..inp.g {
                    let e = inp.entry(r, x);
                    if e.is_zero() {
                        continue;
                    }
                    let mut mm = mono.clone();
                    mm.push(r);
                    mm.sort_unstable();
                    let row = tgt.tensor_index(&[ri, stgt.idx(&mm)]);
                    entries.push((row, col, if s % 2 == 0 { e.clone() } else { -e }));
                }
            }
        }
    }
    PolyMap::from_entries(
        inp.ring(),
        GradedFreeModule::single(src, sym_twist(inp, j, m)),
        GradedFreeModule::single(tgt, sym_twist(inp, j - 1, m + 1)),
        entries,
    )
}

/// `D^k(G*) ⊗ ∧^w F → D^{k-1}(G*) ⊗ ∧^{w-1} F`,
/// `e^(a) ⊗ f_C ↦ Σ_r Σ_s (-1)^s φ_{r,c_s} e^(a-ε_r) ⊗ f_{C∖c_s}`.
fn wedge_dual_diff(inp: &ENInput, k: usize, w: usize) -> Result<PolyMap> {
    let src = wedge_term_space(inp, k, w);
    let tgt = wedge_term_space(inp, k - 1, w - 1);
    let gd = dual_space(&inp.g_space);
    let dsrc = BasisSpace::divided(k, &gd);
    let dtgt = BasisSpace::divided(k - 1, &gd);
    let wsrc = BasisSpace::wedge(w, &inp.f_space);
    let wtgt = BasisSpace::wedge(w - 1, &inp.f_space);
    let mut entries = Vec::new();
    for (ai, a) in dsrc.labels().iter().enumerate() {
        for (ci, c) in wsrc.labels().iter().enumerate() {
            let col = src.tensor_index(&[ai, ci]);
            let mut seen = None;
            for (p, &r) in a.iter().enumerate() {
                if seen == Some(r) {
                    continue;
                }
                seen = Some(r);
                let mut a2 = a.clone();
                a2.remove(p);
                let di = dtgt.idx(&a2);
                for s in 0..w {
                    let e = inp.entry(r, c[s]);
                    if e.is_zero() {
                        continue;
                    }
                    let mut rest = c.clone();
                    rest.remove(s);
                    let row = tgt.tensor_index(&[di, wtgt.idx(&rest)]);
                    entries.push((row, col, if s % 2 == 0 { e.clone() } else { -e }));
                }
            }
        }
    }
    PolyMap::from_entries(
        inp.ring(),
        GradedFreeModule::single(src, wedge_twist(inp, k, w)),
        GradedFreeModule::single(tgt, wedge_twist(inp, k - 1, w - 1)),
        entries,
    )
}

/// `∧^{g+i} F → ∧^i F`, `f_C ↦ Σ_{A ⊂ C, |A| = g} sgn(A, C∖A) det φ_{[g],A} f_{C∖A}`.
fn splice_diff(inp: &ENInput, i: usize) -> Result<PolyMap> {
    let src = wedge_term_space(inp, 0, inp.g + i);
    let tgt = sym_term_space(inp, i, 0);
    let wsrc = BasisSpace::wedge(inp.g + i, &inp.f_space);
    let wtgt = BasisSpace::wedge(i, &inp.f_space);
    let mut minors: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
    let mut entries = Vec::new();
    for (ci, c) in wsrc.labels().iter().enumerate() {
        for (sign, a, rest) in shuffles(c, inp.g) {
            let det = minors.entry(a.clone()).or_insert_with(|| inp.maximal_minor(&a)).clone();
            if det.is_zero() {
                continue;
            }
            let row = tgt.tensor_index(&[wtgt.idx(&rest), 0]);
            let col = src.tensor_index(&[0, ci]);
            entries.push((row, col, if sign > 0 { det } else { -&det }));
        }
    }
    PolyMap::from_entries(
        inp.ring(),
        GradedFreeModule::single(src, wedge_twist(inp, 0, inp.g + i)),
        GradedFreeModule::single(tgt, sym_twist(inp, i, 0)),
        entries,
    )
}

/// `Sym^i(φ)`: `∧^j F ⊗ Sym^{i-j} G` in position `j`.
pub fn sym_complex(phi: &PolyMap, i: usize) -> Result<GradedComplex> {
    let inp = ENInput::new(phi)?;
    sym_part(&inp, i).map(|(c, _)| c)
}

fn sym_part(inp: &ENInput, i: usize) -> Result<(GradedComplex, Vec<TermKind>)> {
    let top = i.min(inp.f);
    let terms = (0..=top)
        .map(|j| GradedFreeModule::single(sym_term_space(inp, j, i - j), sym_twist(inp, j, i - j)))
        .collect();
    let diffs = (1..=top).map(|j| sym_diff(inp, j, i - j)).collect::<Result<Vec<_>>>()?;
    let kinds = (0..=top).map(|j| TermKind::Sym { j, m: i - j }).collect();
    Ok((GradedComplex::new(inp.ring(), 0, terms, diffs)?, kinds))
}

/// `∧^i(φ)`: `D^j F ⊗ ∧^{i-j} G` in position `j`, with
/// `e^(a) ⊗ w ↦ Σ_k e^(a-ε_k) ⊗ φ(f_k) ∧ w`.
pub fn wedge_complex(phi: &PolyMap, i: usize) -> Result<GradedComplex> {
    let inp = ENInput::new(phi)?;
    let lo = i.saturating_sub(inp.g);
    let space = |j: usize| {
        BasisSpace::tensor(&[BasisSpace::divided(j, &inp.f_space), BasisSpace::wedge(i - j, &inp.g_space)])
    };
    let twist = |j: usize| j as i64 * inp.t_f + (i - j) as i64 * inp.t_g;
    let terms = (lo..=i).map(|j| GradedFreeModule::single(space(j), twist(j))).collect();
    let mut diffs = Vec::new();
    for j in lo + 1..=i {
        let (src, tgt) = (space(j), space(j - 1));
        let dsrc = BasisSpace::divided(j, &inp.f_space);
        let dtgt = BasisSpace::divided(j - 1, &inp.f_space);
        let wsrc = BasisSpace::wedge(i - j, &inp.g_space);
        let wtgt = BasisSpace::wedge(i - j + 1, &inp.g_space);
        let mut entries = Vec::new();
        for (ai, a) in dsrc.labels().iter().enumerate() {
            let mut seen = None;
            for (p, &k) in a.iter().enumerate() {
                if seen == Some(k) {
                    continue;
                }
                seen = Some(k);
                let mut a2 = a.clone();
                a2.remove(p);
                let di = dtgt.idx(&a2);
                for (wi, w) in wsrc.labels().iter().enumerate() {
                    for r in 0..inp.g {
                        let e = inp.entry(r, k);
                        if e.is_zero() {
                            continue;
                        }
                        if let Some((sign, merged)) = wedge_merge(&[r], w) {
                            let row = tgt.tensor_index(&[di, wtgt.idx(&merged)]);
                            let col = src.tensor_index(&[ai, wi]);
                            entries.push((row, col, if sign > 0 { e.clone() } else { -e }));
                        }
                    }
                }
            }
        }
        diffs.push(PolyMap::from_entries(
            inp.ring(),
            GradedFreeModule::single(src, twist(j)),
            GradedFreeModule::single(tgt, twist(j - 1)),
            entries,
        )?);
    }
    GradedComplex::new(inp.ring(), lo as i64, terms, diffs)
}

/// The reformulation of `∧^{f-g-i}(φ*)`: `D^k(G*) ⊗ ∧^{g+i+k} F` in position
/// `i + 1 + k`. `None` when every term vanishes.
fn wedge_part(inp: &ENInput, i: i64) -> Result<Option<(GradedComplex, Vec<TermKind>)>> {
    let (f, g) = (inp.f as i64, inp.g as i64);
    let k_lo = (-(g + i)).max(0);
    let k_hi = f - g - i;
    if k_hi < k_lo {
        return Ok(None);
    }
    let ks: Vec<usize> = (k_lo..=k_hi).map(|k| k as usize).collect();
    let w = |k: usize| (g + i + k as i64) as usize;
    let terms = ks
        .iter()
        .map(|&k| GradedFreeModule::single(wedge_term_space(inp, k, w(k)), wedge_twist(inp, k, w(k))))
        .collect();
    let diffs = ks[1..].iter().map(|&k| wedge_dual_diff(inp, k, w(k))).collect::<Result<Vec<_>>>()?;
    let kinds = ks.iter().map(|&k| TermKind::Wedge { k, w: w(k) }).collect();
    Ok(Some((GradedComplex::new(inp.ring(), i + 1 + k_lo, terms, diffs)?, kinds)))
}

/// The reformulated complex `D^k(G*) ⊗ ∧^{g+i+k} F` on its own.
pub fn wedgedual_complex(phi: &PolyMap, i: i64) -> Result<GradedComplex> {
    let inp = ENInput::new(phi)?;
    wedge_part(&inp, i)?
        .map(|(c, _)| c)
        .ok_or_else(|| Error::InvalidInput(format!("the reformulated complex is zero for i = {i}")))
}

/// `C_i(φ)`.
pub fn en_complex(phi: &PolyMap, i: i64) -> Result<ENComplex> {
    let inp = ENInput::new(phi)?;
    let (f, g) = (inp.f as i64, inp.g as i64);
    let ring = inp.ring();
    let (provenance, complex, kinds) = if i > f - g {
        let (c, k) = sym_part(&inp, i as usize)?;
        (Provenance::PureSym, c, k)
    } else if i <= -1 {
        let (c, k) = wedge_part(&inp, i)?.ok_or_else(|| Error::InvalidInput(format!("C_{i} is zero")))?;
        (Provenance::PureWedge, c, k)
    } else {
        let (s, mut ks) = sym_part(&inp, i as usize)?;
        let (w, kw) = wedge_part(&inp, i)?.expect("nonempty for 0 <= i <= f - g");
        let mut terms = s.terms.clone();
        terms.extend(w.terms.iter().cloned());
        let mut diffs = s.diffs.clone();
        diffs.push(splice_diff(&inp, i as usize)?);
        diffs.extend(w.diffs.iter().cloned());
        ks.extend(kw);
        (Provenance::Spliced, GradedComplex::new(ring, 0, terms, diffs)?, ks)
    };
    Ok(ENComplex { index: i, f: inp.f, g: inp.g, provenance, complex, kinds })
}

/// The `(b+1) × (d+1)` Hankel matrix `(x_{i+j})` over `Q[x_0..x_{d+b}]`, as a
/// map `Q^{d+1} ⊗ S(-1) → Q^{b+1} ⊗ S`.
pub fn hankel_phi(d: usize, b: usize) -> Result<PolyMap> {
    if d == 0 || b == 0 {
        return Err(Error::InvalidInput(format!("Hankel matrix needs d, b >= 1, got d = {d}, b = {b}")));
    }
    let ring = PolyRing::new(d + b + 1);
    let entries = (0..=b).flat_map(|i| (0..=d).map(move |j| (i, j, ring.var(i + j))));
    PolyMap::from_entries(
        ring,
        GradedFreeModule::single(BasisSpace::free(d + 1), 1),
        GradedFreeModule::single(BasisSpace::free(b + 1), 0),
        entries,
    )
}

/// The generic `g × f` matrix `(x_{r,c})` over `Q[x_{0,0}..x_{g-1,f-1}]`,
/// variable `x_{r,c}` having index `r f + c`.
pub fn generic_phi(f: usize, g: usize) -> Result<PolyMap> {
    let ring = PolyRing::new(f * g);
    let entries = (0..g).flat_map(|r| (0..f).map(move |c| (r, c, ring.var(r * f + c))));
    PolyMap::from_entries(
        ring,
        GradedFreeModule::single(BasisSpace::free(f), 1),
        GradedFreeModule::single(BasisSpace::free(g), 0),
        entries,
    )
}

fn sign_of_sum(a: &[usize]) -> Rational {
    if a.iter().sum::<usize>() % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn complement(a: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|x| !a.contains(x)).collect()
}

/// Checks `Sym^i(φ)* ≅ ∧^i(φ*)` entrywise: after shifting positions by `i`,
/// the two complexes agree up to swapping the tensor factors.
pub fn duality1_check(phi: &PolyMap, i: usize) -> Result<Verdict> {
    let a = sym_complex(phi, i)?.dualize().shifted(i as i64);
    let b = wedge_complex(&phi.dual(), i)?;
    if a.positions() != b.positions() {
        return Err(Error::DimensionMismatch(format!(
            "positions {:?} and {:?} differ",
            a.positions(),
            b.positions()
        )));
    }
    let mut blocks = BTreeMap::new();
    for p in a.positions() {
        let src = a.term(p);
        let tgt = b.term(p);
        let (sspace, tspace) = (src.space().expect("single").clone(), tgt.space().expect("single").clone());
        let inner = sspace.inner().expect("dual of a tensor");
        let n = tspace.dim();
        let trip = inner.labels().iter().enumerate().map(|(idx, l)| (tspace.tensor_index(&[l[1], l[0]]), idx, Rational::one()));
        let m = SparseMatrix::from_triplets(n, sspace.dim(), trip);
        blocks.insert(p, PolyMap::from_constant(a.ring, src, tgt, &m)?);
    }
    ChainMap { source: a, target: b, shift: 0, blocks }.verify()
}

/// Constant identification of term `kind` of `C_i(φ)` with the dual of the
/// matching term of `C_{f-g-i}(φ)`, built from the star map
/// `f_A ↦ (-1)^{ΣA} f_{A^c}*` and the dual bases of `Sym` and `D`.
fn star_block(inp: &ENInput, kind: TermKind, target: &BasisSpace) -> SparseMatrix {
    let inner = target.inner().expect("dual of a tensor").clone();
    let f = inp.f;
    match kind {
        TermKind::Sym { j, m } => {
            let wl = subsets(f, j);
            let ml = multisets(inp.g, m);
            let dk = BasisSpace::divided(m, &dual_space(&inp.g_space));
            let wc = BasisSpace::wedge(f - j, &inp.f_space);
            let mut trip = Vec::new();
            for (ai, a) in wl.iter().enumerate() {
                let c = wc.idx(&complement(a, f));
                let sg = sign_of_sum(a);
                for (mi, mono) in ml.iter().enumerate() {
                    let row = inner.tensor_index(&[dk.idx(mono), c]);
                    trip.push((row, ai * ml.len() + mi, sg.clone()));
                }
            }
            SparseMatrix::from_triplets(inner.dim(), wl.len() * ml.len(), trip)
        }
        TermKind::Wedge { k, w } => {
            let dl = multisets(inp.g, k);
            let wl = subsets(f, w);
            let wc = BasisSpace::wedge(f - w, &inp.f_space);
            let sk = BasisSpace::sym(k, &inp.g_space);
            let mut trip = Vec::new();
            for (ai, a) in dl.iter().enumerate() {
                for (ci, c) in wl.iter().enumerate() {
                    let row = inner.tensor_index(&[wc.idx(&complement(c, f)), sk.idx(a)]);
                    trip.push((row, ai * wl.len() + ci, sign_of_sum(c)));
                }
            }
            SparseMatrix::from_triplets(inner.dim(), dl.len() * wl.len(), trip)
        }
    }
}

/// Outcome of an identification checked up to one scalar per position.
#[derive(Clone, Debug, Serialize)]
pub struct ScaledIdentification {
    pub position_shift: i64,
    pub twist_shift: i64,
    /// Scalar applied at each source position, as exact strings.
    pub scalars: BTreeMap<i64, String>,
}

/// Checks `C_i(φ) ≅ C_{f-g-i}(φ)*` through the star identification, with one
/// scalar per position found by propagation from the lowest position.
pub fn duality2_check(phi: &PolyMap, i: i64) -> Result<ScaledIdentification> {
    let inp = ENInput::new(phi)?;
    let (f, g) = (inp.f as i64, inp.g as i64);
    let c = en_complex(phi, i)?;
    let other = en_complex(phi, f - g - i)?;
    let twist_shift = f * inp.t_f - g * inp.t_g;
    let shift = -(f - g + 1);
    let dual = other.complex.dualize().twisted(twist_shift);
    let mut blocks = BTreeMap::new();
    for (p, kind) in c.complex.positions().zip(c.kinds.iter()) {
        let tgt = dual.term(p + shift);
        let space = tgt
            .space()
            .ok_or_else(|| Error::DimensionMismatch(format!("no dual term at position {}", p + shift)))?;
        blocks.insert(p, star_block(&inp, *kind, space));
    }
    let (map, scalars) = propagate_scalars(&c.complex, &dual, shift, &blocks)?;
    if let Err(w) = map.verify()? {
        return Err(Error::Verification(format!("identification fails: {w}")));
    }
    Ok(ScaledIdentification {
        position_shift: shift,
        twist_shift,
        scalars: scalars.iter().map(|(p, s)| (*p, crate::linalg::format_rational(s))).collect(),
    })
}

/// Checks that the reformulated complex matches `∧^{f-g-i}(φ*)` term by term
/// under `∧^j F* ≅ ∧^{f-j} F`, up to one scalar per position.
pub fn reformulation_check(phi: &PolyMap, i: i64) -> Result<ScaledIdentification> {
    let inp = ENInput::new(phi)?;
    let (f, g) = (inp.f as i64, inp.g as i64);
    let order = f - g - i;
    if order < 0 {
        return Err(Error::InvalidInput(format!("∧^{order} is not defined")));
    }
    let src = wedge_complex(&phi.dual(), order as usize)?;
    let twist_shift = f * inp.t_f - g * inp.t_g;
    let src = src.twisted(twist_shift);
    let (tgt, _) = wedge_part(&inp, i)?.ok_or_else(|| Error::InvalidInput("empty complex".into()))?;
    let shift = i + 1;
    let mut blocks = BTreeMap::new();
    for p in src.positions() {
        let k = p as usize;
        let wdeg = order as usize - k;
        let dl = multisets(inp.g, k);
        let wl = subsets(inp.f, wdeg);
        let wc = BasisSpace::wedge(inp.f - wdeg, &inp.f_space);
        let tspace = tgt.term(p + shift);
        let tspace = tspace.space().expect("single").clone();
        let mut trip = Vec::new();
        for ai in 0..dl.len() {
            for (ci, c) in wl.iter().enumerate() {
                let row = tspace.tensor_index(&[ai, wc.idx(&complement(c, inp.f))]);
                trip.push((row, ai * wl.len() + ci, sign_of_sum(c)));
            }
        }
        blocks.insert(p, SparseMatrix::from_triplets(tspace.dim(), dl.len() * wl.len(), trip));
    }
    let (map, scalars) = propagate_scalars(&src, &tgt, shift, &blocks)?;
    if let Err(w) = map.verify()? {
        return Err(Error::Verification(format!("reformulation fails: {w}")));
    }
    Ok(ScaledIdentification {
        position_shift: shift,
        twist_shift,
        scalars: scalars.iter().map(|(p, s)| (*p, crate::linalg::format_rational(s))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn small_phi() -> PolyMap {
        let ring = PolyRing::new(3);
        let z = |i| ring.var(i);
        let entries = vec![
            (0, 0, z(0)),
            (0, 1, &z(1) + &z(2)),
            (0, 2, z(2).scale(&int(2))),
            (1, 0, z(1)),
            (1, 1, z(0).scale(&rat(-1, 2))),
            (1, 2, &z(0) - &z(1)),
        ];
        PolyMap::from_entries(
            ring,
            GradedFreeModule::single(BasisSpace::free(3), 1),
            GradedFreeModule::single(BasisSpace::free(2), 0),
            entries,
        )
        .unwrap()
    }

    #[test]
    fn low_sym_powers() {
        let phi = small_phi();
        let c0 = sym_complex(&phi, 0).unwrap();
        assert_eq!(c0.ranks(), vec![1]);
        let c1 = sym_complex(&phi, 1).unwrap();
        assert_eq!(c1.ranks(), vec![2, 3]);
        assert_eq!(c1.diff(1).entries().count(), phi.entries().count());
        for i in 0..5 {
            assert!(sym_complex(&phi, i).unwrap().verify().is_ok());
            assert!(wedge_complex(&phi, i).unwrap().verify().is_ok());
        }
        let w1 = wedge_complex(&phi, 1).unwrap();
        assert_eq!(w1.ranks(), vec![2, 3]);
    }

    #[test]
    fn family_is_a_complex_across_splices() {
        for (f, g) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
            let phi = generic_phi(f, g).unwrap();
            for i in -2..=(f as i64 - g as i64 + 2) {
                let c = en_complex(&phi, i).unwrap();
                assert_eq!(c.complex.verify(), Ok(()), "f={f} g={g} i={i}");
            }
        }
    }

    #[test]
    fn buchsbaum_rim_ranks() {
        let c = en_complex(&generic_phi(4, 2).unwrap(), 1).unwrap();
        assert_eq!(c.provenance, Provenance::Spliced);
        assert_eq!(c.complex.ranks(), vec![2, 4, 4, 2]);
        let c = en_complex(&generic_phi(3, 2).unwrap(), 2).unwrap();
        assert_eq!(c.provenance, Provenance::PureSym);
        assert_eq!(c.complex.ranks(), vec![3, 6, 3]);
        let c = en_complex(&generic_phi(3, 2).unwrap(), -1).unwrap();
        assert_eq!(c.provenance, Provenance::PureWedge);
        assert_eq!(c.complex.ranks(), vec![3, 6, 3]);
    }

    #[test]
    fn hankel_entries() {
        let h = hankel_phi(1, 1).unwrap();
        assert_eq!(h.entry(0, 1), h.entry(1, 0));
        assert_eq!(h.entry(1, 1), h.ring.var(2));
        let h = hankel_phi(2, 1).unwrap();
        assert_eq!(h.shape(), (2, 3));
        for (r, c, p) in h.entries() {
            assert_eq!(*p, h.ring.var(r + c));
        }
    }

    #[test]
    fn dualities() {
        let phi = small_phi();
        for i in 0..4 {
            assert_eq!(duality1_check(&phi, i).unwrap(), Ok(()));
        }
        let phi = generic_phi(4, 2).unwrap();
        for i in -1..=3 {
            duality2_check(&phi, i).unwrap();
        }
        for i in -1..=2 {
            reformulation_check(&phi, i).unwrap();
        }
    }
}
