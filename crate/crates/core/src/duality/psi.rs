//! Koszul cycles over `S = Q[z_0..z_b]`: the restriction `φ|_{V_1}` of the
//! Koszul differential, the Schur modules `𝕊_{(a,1^i)} V_0 = ker δ`, the maps
//! `ψ_{i,j}(V_1)` and the resolution `C_•` of `m^{b-1}`.
//!
//! `δ: ∧^i V_0 ⊗ Sym^a V_0 → ∧^{i-1} V_0 ⊗ Sym^{a+1} V_0` is
//! `e_A ⊗ m ↦ Σ_s (-1)^s e_{A∖a_s} ⊗ z_{a_s} m`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::basis::{BasisSpace, LinearMap, SpaceKind};
use crate::combin::{multiset_merge, multisets, subsets, wedge_merge};
use crate::complex::{GradedComplex, GradedFreeModule, PolyMap};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseMatrix, SparseVec};
use crate::poly::{Poly, PolyRing};

/// `V_0` and the spanning matrix of `V_1` in the basis of `∧^2 V_0`. Accepts a
/// subspace of `∧^2 V_0` or `∧^2 V_0` itself.
pub fn v1_parts(v1: &BasisSpace) -> Result<(BasisSpace, SparseMatrix)> {
    let wedge2 = |s: &BasisSpace| match s.kind() {
        SpaceKind::Wedge { power: 2, inner } => Some(inner.clone()),
        _ => None,
    };
    if let Some(v0) = wedge2(v1) {
        return Ok((v0, SparseMatrix::identity(v1.dim())));
    }
    if let SpaceKind::Subspace { ambient, span } = v1.kind() {
        if let Some(v0) = wedge2(ambient) {
            return Ok((v0, span.clone()));
        }
    }
    Err(Error::WrongSpace(format!("{} is not inside ∧^2 V_0", v1.describe())))
}

/// `φ|_{V_1}: V_1 ⊗ S(-1) → V_0 ⊗ S`, `e_a ∧ e_b ↦ z_a e_b - z_b e_a`.
pub fn koszul_phi(v1: &BasisSpace) -> Result<PolyMap> {
    let (v0, span) = v1_parts(v1)?;
    let n = v0.dim();
    let ring = PolyRing::new(n);
    let w2 = BasisSpace::wedge(2, &v0);
    let mut entries = Vec::new();
    for (c, col) in span.columns().into_iter().enumerate() {
        for (w, x) in col {
            let (a, b) = (w2.label(w)[0], w2.label(w)[1]);
            entries.push((b, c, ring.var(a).scale(&x)));
            entries.push((a, c, ring.var(b).scale(&-x)));
        }
    }
    PolyMap::from_entries(ring, GradedFreeModule::single(v1.clone(), 1), GradedFreeModule::single(v0, 0), entries)
}

/// `∧^i V_0 ⊗ Sym^a V_0`.
pub fn koszul_space(v0: &BasisSpace, i: usize, a: usize) -> BasisSpace {
    BasisSpace::tensor(&[BasisSpace::wedge(i, v0), BasisSpace::sym(a, v0)])
}

/// The matrix of `δ` on `∧^i V_0 ⊗ Sym^a V_0`; zero rows when `i = 0`.
pub fn koszul_delta(v0: &BasisSpace, i: usize, a: usize) -> SparseMatrix {
    let src = koszul_space(v0, i, a);
    if i == 0 {
        return SparseMatrix::zeros(0, src.dim());
    }
    let tgt = koszul_space(v0, i - 1, a + 1);
    let (ws, ss) = (BasisSpace::wedge(i, v0), BasisSpace::sym(a, v0));
    let (wt, st) = (BasisSpace::wedge(i - 1, v0), BasisSpace::sym(a + 1, v0));
    let mut trip = Vec::new();
    for (wi, w) in ws.labels().iter().enumerate() {
        for (mi, m) in ss.labels().iter().enumerate() {
            let col = src.tensor_index(&[wi, mi]);
            for s in 0..i {
                let mut rest = w.clone();
                let x = rest.remove(s);
                let row = tgt.tensor_index(&[wt.idx(&rest), st.idx(&multiset_merge(m, &[x]))]);
                trip.push((row, col, if s % 2 == 0 { Rational::one() } else { -Rational::one() }));
            }
        }
    }
    SparseMatrix::from_triplets(tgt.dim(), src.dim(), trip)
}

/// `𝕊_{(a,1^i)} V_0 = ker(δ) ⊂ ∧^i V_0 ⊗ Sym^a V_0`, with the canonical kernel
/// basis of the reduced echelon form of `δ`. A cycle's coordinates are its
/// entries at the free columns.
#[derive(Clone, Debug)]
pub struct SchurModule {
    pub i: usize,
    pub a: usize,
    pub ambient: BasisSpace,
    /// The module as a based subspace of `ambient`.
    pub space: BasisSpace,
    free: Vec<usize>,
    delta: SparseMatrix,
}

impl SchurModule {
    pub fn new(v0: &BasisSpace, i: usize, a: usize) -> Result<Self> {
        let ambient = koszul_space(v0, i, a);
        let delta = koszul_delta(v0, i, a);
        let basis = delta.kernel_basis();
        let pivots = delta.pivot_columns();
        let mut is_pivot = vec![false; ambient.dim()];
        for p in pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..ambient.dim()).filter(|&c| !is_pivot[c]).collect();
        debug_assert_eq!(free.len(), basis.cols());
        let space = BasisSpace::subspace(&ambient, basis)?;
        Ok(SchurModule { i, a, ambient, space, free, delta })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn basis(&self) -> &SparseMatrix {
        match self.space.kind() {
            SpaceKind::Subspace { span, .. } => span,
            _ => unreachable!("constructed as a subspace"),
        }
    }

    /// Coordinates of an ambient vector, which must be a cycle.
    pub fn coords(&self, v: &SparseVec) -> Result<SparseVec> {
        if !self.delta.mul_vec(v).is_empty() {
            return Err(Error::Verification(format!(
                "vector is not a Koszul cycle in ∧^{} ⊗ Sym^{}",
                self.i, self.a
            )));
        }
        let mut out = Vec::new();
        let mut it = v.iter().peekable();
        for (k, &f) in self.free.iter().enumerate() {
            while it.peek().is_some_and(|(r, _)| *r < f) {
                it.next();
            }
            if let Some((r, x)) = it.peek() {
                if *r == f {
                    out.push((k, x.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of every column of `m`.
    pub fn coords_matrix(&self, m: &SparseMatrix) -> Result<SparseMatrix> {
        let cols = m.columns().iter().map(|c| self.coords(c)).collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), &cols))
    }
}

/// Elements of `∧ V_0 ⊗ Sym V_0`, keyed by (wedge label, monomial).
type Element = BTreeMap<(Vec<usize>, Vec<usize>), Rational>;

fn multiply(x: &Element, y: &Element) -> Element {
    let mut out = Element::new();
    for ((a, p), s) in x {
        for ((b, q), t) in y {
            let Some((sign, w)) = wedge_merge(a, b) else { continue };
            let c = s * t;
            let e = out.entry((w, multiset_merge(p, q))).or_insert_with(Rational::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The image of `e_a ∧ e_b` in homological and internal degree one:
/// `e_a ⊗ z_b - e_b ⊗ z_a`, extended linearly over a column of the span.
fn dg_image(w2: &BasisSpace, col: &SparseVec) -> Element {
    let mut out = Element::new();
    for (w, x) in col {
        let (a, b) = (w2.label(*w)[0], w2.label(*w)[1]);
        *out.entry((vec![a], vec![b])).or_insert_with(Rational::zero) += x;
        *out.entry((vec![b], vec![a])).or_insert_with(Rational::zero) -= x;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `ψ_{i,j}(V_1)` as a linear map into the Schur module.
#[derive(Clone, Debug)]
pub struct PsiMap {
    pub i: usize,
    pub j: usize,
    pub v1: BasisSpace,
    pub target: SchurModule,
    pub map: LinearMap,
}

/// The source `∧^i V_1 ⊗ Sym^j V_0` of `ψ_{i,j}`.
pub fn psi_source(v1: &BasisSpace, v0: &BasisSpace, i: usize, j: usize) -> BasisSpace {
    BasisSpace::tensor(&[BasisSpace::wedge(i, v1), BasisSpace::sym(j, v0)])
}

/// `ψ_{i,j}(V_1)` in the coordinates of `∧^i V_0 ⊗ Sym^{i+j} V_0`: the
/// product of the cycles of the chosen `V_1` vectors times the monomial.
pub fn psi_ambient(v1: &BasisSpace, i: usize, j: usize) -> Result<SparseMatrix> {
    let (v0, span) = v1_parts(v1)?;
    let w2 = BasisSpace::wedge(2, &v0);
    let images: Vec<Element> = span.columns().iter().map(|c| dg_image(&w2, c)).collect();
    let tgt = koszul_space(&v0, i, i + j);
    let (wt, st) = (BasisSpace::wedge(i, &v0), BasisSpace::sym(i + j, &v0));
    let wl = subsets(v1.dim(), i);
    let ml = multisets(v0.dim(), j);
    let cols: Vec<SparseVec> = wl
        .par_iter()
        .flat_map_iter(|c| {
            let prod = c.iter().fold(Element::from([((vec![], vec![]), Rational::one())]), |acc, &k| {
                multiply(&acc, &images[k])
            });
            let (tgt, wt, st) = (&tgt, &wt, &st);
            ml.iter().map(move |m| {
                let mut v: SparseVec = prod
                    .iter()
                    .map(|((w, p), x)| (tgt.tensor_index(&[wt.idx(w), st.idx(&multiset_merge(p, m))]), x.clone()))
                    .collect();
                v.sort_by_key(|(r, _)| *r);
                v
            })
        })
        .collect();
    Ok(SparseMatrix::from_columns(tgt.dim(), &cols))
}

pub fn psi(v1: &BasisSpace, i: usize, j: usize) -> Result<PsiMap> {
    let (v0, _) = v1_parts(v1)?;
    let target = SchurModule::new(&v0, i, i + j)?;
    let m = target.coords_matrix(&psi_ambient(v1, i, j)?)?;
    let map = LinearMap::new(psi_source(v1, &v0, i, j), target.space.clone(), m)?;
    Ok(PsiMap { i, j, v1: v1.clone(), target, map })
}

/// `C_•`: `𝕊_{(b-1,1^i)} V_0 ⊗ S(-(b-1+i))` in position `i`, with the
/// restricted comultiplication as differential. Zero terms are dropped.
pub fn resolution_on(v0: &BasisSpace, b: usize) -> Result<GradedComplex> {
    if b == 0 || v0.dim() != b + 1 {
        return Err(Error::InvalidInput(format!("need b >= 1 and dim V_0 = b + 1, got b = {b}")));
    }
    let ring = PolyRing::new(v0.dim());
    let mods: Vec<SchurModule> = (0..=b)
        .map(|i| SchurModule::new(v0, i, b - 1))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .take_while(|m| m.dim() > 0)
        .collect();
    let terms: Vec<GradedFreeModule> = mods
        .iter()
        .map(|m| GradedFreeModule::single(m.space.clone(), (b - 1 + m.i) as i64))
        .collect();
    let diffs = (1..mods.len())
        .into_par_iter()
        .map(|i| restricted_comultiplication(v0, &mods[i], &mods[i - 1], ring, &terms[i], &terms[i - 1]))
        .collect::<Result<Vec<_>>>()?;
    GradedComplex::new(ring, 0, terms, diffs)
}

pub fn resolution_c(b: usize) -> Result<GradedComplex> {
    resolution_on(&BasisSpace::free(b + 1), b)
}

fn restricted_comultiplication(
    v0: &BasisSpace,
    src: &SchurModule,
    tgt: &SchurModule,
    ring: PolyRing,
    src_mod: &GradedFreeModule,
    tgt_mod: &GradedFreeModule,
) -> Result<PolyMap> {
    let i = src.i;
    let ws = BasisSpace::wedge(i, v0);
    let wt = BasisSpace::wedge(i - 1, v0);
    let n = v0.dim();
    let mut entries = Vec::new();
    for (c, col) in src.basis().columns().into_iter().enumerate() {
        let mut parts: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        for (idx, x) in col {
            let l = src.ambient.label(idx);
            let (w, m) = (ws.label(l[0]), l[1]);
            for s in 0..i {
                let mut rest = w.to_vec();
                let var = rest.remove(s);
                let row = tgt.ambient.tensor_index(&[wt.idx(&rest), m]);
                let e = parts[var].entry(row).or_insert_with(Rational::zero);
                if s % 2 == 0 {
                    *e += &x;
                } else {
                    *e -= &x;
                }
            }
        }
        for (var, part) in parts.into_iter().enumerate() {
            let v: SparseVec = part.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            for (r, x) in tgt.coords(&v)? {
                entries.push((r, c, Poly::var(n, var).scale(&x)));
            }
        }
    }
    PolyMap::from_entries(ring, src_mod.clone(), tgt_mod.clone(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::induced_wedge_inclusion;
    use crate::linalg::rational::binomial;
    use crate::rep::{clebsch_gordan_v1, schur_dim, Partition};

    #[test]
    fn schur_module_dims_match_hook_content() {
        for n in 2..=5 {
            let v0 = BasisSpace::free(n);
            for i in 0..n {
                for a in 1..4 {
                    let m = SchurModule::new(&v0, i, a).unwrap();
                    let mut parts = vec![a];
                    parts.extend(std::iter::repeat(1).take(i));
                    assert_eq!(m.dim() as u64, schur_dim(&Partition::new(parts).unwrap(), n), "n={n} i={i} a={a}");
                }
            }
        }
    }

    #[test]
    fn psi_zero_is_identity() {
        let v1 = clebsch_gordan_v1(3).unwrap();
        let p = psi(&v1, 0, 2).unwrap();
        assert_eq!(p.map.matrix, SparseMatrix::identity(10));
    }

    #[test]
    fn psi_images_are_cycles_and_functorial() {
        for b in 2..=4 {
            let v1 = clebsch_gordan_v1(b).unwrap();
            let (v0, _) = v1_parts(&v1).unwrap();
            let full = BasisSpace::wedge(2, &v0);
            for i in 0..=b {
                for j in 0..=(b - i).min(2) {
                    let amb = psi_ambient(&v1, i, j).unwrap();
                    assert!((&koszul_delta(&v0, i, i + j) * &amb).is_zero());
                    let big = psi_ambient(&full, i, j).unwrap();
                    let inc = induced_wedge_inclusion(&v1, i).unwrap().matrix.kron(&SparseMatrix::identity(
                        binomial((v0.dim() + j - 1) as i64, j as i64) as usize,
                    ));
                    assert_eq!(&big * &inc, amb, "b={b} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn resolution_small_cases() {
        let c1 = resolution_c(1).unwrap();
        assert_eq!(c1.ranks(), vec![1]);
        let c2 = resolution_c(2).unwrap();
        assert_eq!(c2.ranks(), vec![3, 3, 1]);
        assert!(c2.verify().is_ok());
    }

    #[test]
    fn phi_entries_for_sl2_cubics() {
        let phi = koszul_phi(&clebsch_gordan_v1(3).unwrap()).unwrap();
        assert_eq!(phi.shape(), (4, 5));
        assert_eq!(format!("{:?}", phi.entry(0, 0)), "-z1");
        assert_eq!(format!("{:?}", phi.entry(3, 2)), "1/6*z0");
    }
}
