//! The chain maps `f: Sym^{b-1}(φ|_{V_1}) → C_•` and `g: T'_• → C_•`, and the
//! self-duality certificate assembled from them.
//!
//! `T'_•` is the reformulated dual complex `D^j(V_0*) ⊗ ∧^{b+j} V_1` of
//! `φ|_{V_1}`, i.e. `∧^{b-1}((φ|_{V_1})*)` up to twist. Positions are aligned so
//! that `P_j`, `T'_j` and `C_j` all sit in position `j`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::BasisSpace;
use crate::combin::{exponents, multiset_merge, multisets, shuffles};
use crate::complex::{propagate_scalars, ChainMap, GradedComplex, GradedFreeModule, PolyMap};
use crate::en::{duality1_check, reformulation_check, sym_complex, wedgedual_complex};
use crate::error::{Error, Result};
use crate::export::MatrixJson;
use crate::linalg::rational::binomial;
use crate::linalg::{format_rational, int, Rational, SparseMatrix};
use crate::poly::{Poly, PolyRing};
use crate::rep::{schur_dim, Partition};

use super::hermite::psi_top_kappa;
use super::psi::{koszul_phi, psi, resolution_on, v1_parts};

fn check_b(v0: &BasisSpace, b: usize) -> Result<()> {
    if b == 0 || v0.dim() != b + 1 {
        return Err(Error::InvalidInput(format!("V_0 has dimension {}, expected b + 1 = {}", v0.dim(), b + 1)));
    }
    Ok(())
}

fn check_dim(v1: &BasisSpace, b: usize) -> Result<()> {
    if v1.dim() != 2 * b - 1 {
        return Err(Error::Precondition(format!("dim V_1 = {}, expected 2b - 1 = {}", v1.dim(), 2 * b - 1)));
    }
    Ok(())
}

/// `P = Sym^{b-1}(φ|_{V_1})`, twisted so that `P_j` is generated in degree `b - 1 + j`.
pub fn sym_side(v1: &BasisSpace, b: usize) -> Result<GradedComplex> {
    Ok(sym_complex(&koszul_phi(v1)?, b - 1)?.twisted(b as i64 - 1))
}

/// `T'`, twisted so that `T'_j` is generated in degree `b - 1 + j`.
pub fn wedge_side(v1: &BasisSpace) -> Result<GradedComplex> {
    Ok(wedgedual_complex(&koszul_phi(v1)?, -1)?.twisted(-1))
}

/// `f(V_1)_j = ψ_{j,b-1-j}(V_1)` in every position.
pub fn f_chain(v1: &BasisSpace, b: usize) -> Result<ChainMap> {
    let (v0, _) = v1_parts(v1)?;
    check_b(&v0, b)?;
    let source = sym_side(v1, b)?;
    let target = resolution_on(&v0, b)?;
    let blocks = source
        .positions()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let m = psi(v1, j as usize, b - 1 - j as usize)?.map.matrix;
            Ok((j, PolyMap::from_constant(source.ring, source.term(j), target.term(j), &m)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ChainMap { source, target, shift: 0, blocks })
}

/// `h_j: D^j(V_0*) ⊗ ∧^{b+j} V_1 → ∧^j V_1 ⊗ Sym^{b-1-j} V_0`,
/// `ξ ⊗ ω ↦ Σ_m Σ_{A ⊔ B = ω} ± ⟨m^* ξ, ψ_{b,0}(e_A)⟩ e_B ⊗ m`, where `m^* ξ` is
/// the divided-power product and `ψ_{b,0}` is read in `κ`-coordinates.
pub fn h_block(v1: &BasisSpace, b: usize, j: usize, top: &SparseMatrix) -> SparseMatrix {
    let (v0, _) = v1_parts(v1).expect("checked by caller");
    let n = v0.dim();
    let dj = multisets(n, j);
    let wsrc = BasisSpace::wedge(b + j, v1);
    let wtop = BasisSpace::wedge(b, v1);
    let wtgt = BasisSpace::wedge(j, v1);
    let sym_top = BasisSpace::sym(b - 1, &v0);
    let ml = multisets(n, b - 1 - j);
    let (rows, cols) = (wtgt.dim() * ml.len(), dj.len() * wsrc.dim());
    let mut trip = Vec::new();
    for (xi_idx, xi) in dj.iter().enumerate() {
        let xe = exponents(xi, n);
        for (mi, m) in ml.iter().enumerate() {
            let me = exponents(m, n);
            let coef: u64 = xe.iter().zip(&me).map(|(&a, &c)| binomial((a + c) as i64, a as i64)).product();
            let hrow = sym_top.idx(&multiset_merge(m, xi));
            for (wi, w) in wsrc.labels().iter().enumerate() {
                let col = xi_idx * wsrc.dim() + wi;
                for (sign, a, rest) in shuffles(w, b) {
                    let h = top.get(hrow, wtop.idx(&a));
                    if h.is_zero() {
                        continue;
                    }
                    let v = h * int(sign * coef as i64);
                    trip.push((wtgt.idx(&rest) * ml.len() + mi, col, v));
                }
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, trip)
}

/// `g` with the scalar applied in each position to make every square commute.
#[derive(Clone, Debug)]
pub struct GChain {
    pub map: ChainMap,
    pub scalars: BTreeMap<i64, Rational>,
}

/// `g_j = f(V_1)_j ∘ h_j`, rescaled position by position from `g_0`.
pub fn g_chain(v1: &BasisSpace, b: usize) -> Result<GChain> {
    let (v0, _) = v1_parts(v1)?;
    check_b(&v0, b)?;
    check_dim(v1, b)?;
    let f = f_chain(v1, b)?;
    let source = wedge_side(v1)?;
    let top = psi_top_kappa(v1)?;
    let mut blocks = BTreeMap::new();
    for j in source.positions() {
        let h = h_block(v1, b, j as usize, &top);
        blocks.insert(j, f.block(j).constant_matrix()?.try_mul(&h)?);
    }
    let (map, scalars) = propagate_scalars(&source, &f.target, 0, &blocks)?;
    if let Err(w) = map.verify()? {
        return Err(Error::Verification(format!("g is not a chain map: {w}")));
    }
    Ok(GChain { map, scalars })
}

/// The complex `V_1 ⊗ S(-2) → V_0 ⊗ S(-1) → S` in positions 2, 1, 0.
pub fn koszul_module_complex(v1: &BasisSpace) -> Result<GradedComplex> {
    let phi = koszul_phi(v1)?;
    let (v0, _) = v1_parts(v1)?;
    let n = v0.dim();
    let ring = PolyRing::new(n);
    let s = GradedFreeModule::single(BasisSpace::free(1), 0);
    let m0 = GradedFreeModule::single(v0.clone(), 1);
    let m1 = GradedFreeModule::single(v1.clone(), 2);
    let d0 = PolyMap::from_entries(ring, m0.clone(), s.clone(), (0..n).map(|r| (0, r, Poly::var(n, r))))?;
    let d1 = phi.with_modules(m1.clone(), m0.clone())?;
    GradedComplex::new(ring, 0, vec![s, m0, m1], vec![d0, d1])
}

/// Middle homology of `V_1 ⊗ S(-2) → V_0 ⊗ S(-1) → S`, degree by degree.
#[derive(Clone, Debug, Serialize)]
pub struct WindowReport {
    pub degrees: (i64, i64),
    pub threshold: i64,
    pub dims: Vec<usize>,
    pub pass: bool,
}

/// Checks that the middle homology vanishes in degrees `b ..= window`.
pub fn finite_length_window(v1: &BasisSpace, b: usize, window: i64) -> Result<WindowReport> {
    let c = koszul_module_complex(v1)?;
    let dims = c.homology_dims(1, 0..=window);
    let threshold = b as i64;
    let pass = dims.iter().enumerate().all(|(d, &h)| (d as i64) < threshold || h == 0);
    Ok(WindowReport { degrees: (0, window), threshold, dims, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRecord {
    pub degree: i64,
    pub dim_p: usize,
    pub dim_t: usize,
    pub dim_c: usize,
    pub rank_f: usize,
    pub rank_g: usize,
    pub containment: bool,
    /// Scalar applied to `g` in this degree.
    pub g_scalar: String,
    /// `x_j` with `g_j x_j = f_j`.
    pub x: MatrixJson,
}

/// An explicit isomorphism `P(b) ≅ T'` together with the evidence for it and
/// for `T' ≅ P*` up to shift and twist.
#[derive(Clone, Debug, Serialize)]
pub struct DualityCertificate {
    pub b: usize,
    pub v1: String,
    pub v1_span: MatrixJson,
    pub window: WindowReport,
    pub degrees: Vec<DegreeRecord>,
    pub f_is_chain_map: bool,
    pub g_is_chain_map: bool,
    pub x_is_chain_map: bool,
    /// Scalars identifying `T'` with `∧^{b-1}((φ|_{V_1})*)`.
    pub reformulation_scalars: BTreeMap<i64, String>,
    /// `Sym^{b-1}(φ)* ≅ ∧^{b-1}(φ*)` checked entrywise.
    pub dual_identification: bool,
    #[serde(skip)]
    pub blocks: BTreeMap<i64, SparseMatrix>,
}

pub fn verify_self_duality(v1: &BasisSpace, b: usize) -> Result<DualityCertificate> {
    verify_self_duality_with_window(v1, b, 3 * b as i64)
}

pub fn verify_self_duality_with_window(v1: &BasisSpace, b: usize, window: i64) -> Result<DualityCertificate> {
    let (v0, span) = v1_parts(v1)?;
    check_b(&v0, b)?;
    check_dim(v1, b)?;
    let window = finite_length_window(v1, b, window)?;
    if !window.pass {
        return Err(Error::Precondition(format!(
            "the Koszul module of V_1 is not of finite length on the window: {:?}",
            window.dims
        )));
    }
    let f = f_chain(v1, b)?;
    if let Err(w) = f.verify()? {
        return Err(Error::Verification(format!("f is not a chain map: {w}")));
    }
    let g = g_chain(v1, b)?;
    let mut degrees = Vec::new();
    let mut blocks = BTreeMap::new();
    for j in f.source.positions() {
        let fj = f.block(j).constant_matrix()?;
        let gj = g.map.block(j).constant_matrix()?;
        let (rank_f, rank_g) = (fj.rank(), gj.rank());
        let dim_p = fj.cols();
        let dim_t = gj.cols();
        let degree = j as usize;
        if rank_f != dim_p {
            return Err(Error::Verification(format!("f_{j} is not injective: rank {rank_f} of {dim_p}")));
        }
        let x = gj.solve_in_column_space(&fj)?.ok_or_else(|| Error::Containment {
            degree,
            detail: format!("image of f_{j} (rank {rank_f}) is not inside image of g_{j} (rank {rank_g})"),
        })?;
        if rank_g != rank_f {
            return Err(Error::Containment { degree, detail: format!("rank g_{j} = {rank_g} differs from rank f_{j} = {rank_f}") });
        }
        if !x.is_invertible() {
            return Err(Error::NotInvertible { degree, rank: x.rank(), size: x.rows().max(x.cols()) });
        }
        degrees.push(DegreeRecord {
            degree: j,
            dim_p,
            dim_t,
            dim_c: fj.rows(),
            rank_f,
            rank_g,
            containment: true,
            g_scalar: format_rational(&g.scalars[&j]),
            x: MatrixJson::from(&x),
        });
        blocks.insert(j, x);
    }
    let source = f.source.twisted(1);
    let target = g.map.source.twisted(1);
    let mut xmap = BTreeMap::new();
    for (j, x) in &blocks {
        xmap.insert(*j, PolyMap::from_constant(source.ring, source.term(*j), target.term(*j), x)?);
    }
    let x = ChainMap { source, target, shift: 0, blocks: xmap };
    if let Err(w) = x.verify()? {
        return Err(Error::Verification(format!("x is not a chain map: {w}")));
    }
    let phi = koszul_phi(v1)?;
    let reform = reformulation_check(&phi, -1)?;
    if let Err(w) = duality1_check(&phi, b - 1)? {
        return Err(Error::Verification(format!("Sym^(b-1) dual identification fails: {w}")));
    }
    Ok(DualityCertificate {
        b,
        v1: v1.describe(),
        v1_span: MatrixJson::from(&span),
        window,
        degrees,
        f_is_chain_map: true,
        g_is_chain_map: true,
        x_is_chain_map: true,
        reformulation_scalars: reform.scalars,
        dual_identification: true,
        blocks,
    })
}

/// `dim 𝕊_{(b-1,1^i)} V_0 - dim(∧^i V_1 ⊗ Sym^{b-1-i} V_0)` for `dim V_1 = 2b - 1`.
pub fn cokernel_dim_f(b: usize, i: usize) -> i64 {
    let (b, i) = (b as i64, i as i64);
    let target = schur_dim(&Partition::hook(b as usize - 1, i as usize), b as usize + 1) as i64;
    let source = if i < b { binomial(2 * b - 1, i) as i64 * binomial(2 * b - 1 - i, b) as i64 } else { 0 };
    target - source
}

/// `dim ∧^{b-i} V_1 · dim Sym^{i-2} V_0`: the term of `∧^{b-2}(φ*)` that the
/// cokernel of `f_i` matches.
pub fn expected_cokernel_dim(b: usize, i: usize) -> i64 {
    if i < 2 || i > b {
        return 0;
    }
    let (b, i) = (b as i64, i as i64);
    binomial(2 * b - 1, b - i) as i64 * binomial(i - 2 + b, b) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::clebsch_gordan_v1;

    #[test]
    fn cokernels_match_the_dual_wedge_terms() {
        let b3: Vec<i64> = (0..=3).map(|i| cokernel_dim_f(3, i)).collect();
        assert_eq!(b3, vec![0, 0, 5, 4]);
        for b in 3..=4 {
            for i in 0..=b {
                assert_eq!(cokernel_dim_f(b, i), expected_cokernel_dim(b, i), "b = {b}, i = {i}");
            }
        }
    }

    #[test]
    fn window_for_sl2_cubics() {
        let v1 = clebsch_gordan_v1(3).unwrap();
        let w = finite_length_window(&v1, 3, 9).unwrap();
        assert_eq!(w.dims, vec![0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert!(w.pass);
    }

    #[test]
    fn g_scalars_alternate_for_b4() {
        let v1 = clebsch_gordan_v1(4).unwrap();
        let g = g_chain(&v1, 4).unwrap();
        let s: Vec<String> = g.scalars.values().map(format_rational).collect();
        assert_eq!(s, vec!["1", "-1", "1", "-1"]);
    }

    #[test]
    fn f_is_a_chain_map_for_small_b() {
        for b in 1..=3 {
            let v1 = clebsch_gordan_v1(b).unwrap();
            assert!(f_chain(&v1, b).unwrap().verify().unwrap().is_ok(), "b = {b}");
        }
    }
}
