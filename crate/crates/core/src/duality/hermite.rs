//! The Hermite reciprocity isomorphism `ψ_{b,0}(Sym^{2b-2} U)` as a matrix,
//! and its comparison with the classical isomorphism for `b = 3`.
//!
//! `𝕊_{(b,1^b)} V_0` is identified with `Sym^{b-1} V_0` through
//! `κ(m) = δ(e_0 ∧ ... ∧ e_b ⊗ m)`. Rows and columns are sorted by `SL_2`
//! weight, highest first, ties kept in basis order.

use serde::Serialize;

use crate::basis::BasisSpace;
use crate::combin::{multisets, subsets};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, rat, Rational, SparseMatrix};
use crate::rep::{clebsch_gordan_v1, sl2_space};

use super::psi::{koszul_delta, psi_ambient, v1_parts};

/// `ψ_{b,0}(V_1)` in `κ`-coordinates: rows `Sym^{b-1} V_0`, columns `∧^b V_1`,
/// both in basis order.
pub fn psi_top_kappa(v1: &BasisSpace) -> Result<SparseMatrix> {
    let (v0, _) = v1_parts(v1)?;
    let b = v0.dim() - 1;
    let kappa = koszul_delta(&v0, b + 1, b - 1);
    kappa
        .solve_in_column_space(&psi_ambient(v1, b, 0)?)?
        .ok_or_else(|| Error::Verification("ψ_{b,0} leaves the image of κ".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct HermiteMatrix {
    pub b: usize,
    #[serde(skip)]
    pub matrix: SparseMatrix,
    /// The top-left entry before normalization.
    #[serde(skip)]
    pub raw_scale: Rational,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// Row and column `SL_2` weights, in display order.
    pub row_weights: Vec<i64>,
    pub col_weights: Vec<i64>,
}

fn weight_order(weights: &[i64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| -weights[i]);
    order
}

/// `ψ_{b,0}(Sym^{2b-2} U)` in display order, scaled so the top-left entry is 1.
pub fn hermite_matrix(b: usize) -> Result<HermiteMatrix> {
    if b < 2 {
        return Err(Error::InvalidInput(format!("b must be at least 2, got {b}")));
    }
    let v1 = clebsch_gordan_v1(b)?;
    let raw = psi_top_kappa(&v1)?;
    let rows = multisets(b + 1, b - 1);
    let cols = subsets(2 * b - 1, b);
    let rw: Vec<i64> = rows.iter().map(|m| m.iter().map(|&k| b as i64 - 2 * k as i64).sum()).collect();
    let cw: Vec<i64> = cols.iter().map(|c| c.iter().map(|&k| 2 * b as i64 - 2 - 2 * k as i64).sum()).collect();
    let (rp, cp) = (weight_order(&rw), weight_order(&cw));
    let sorted = raw.permuted(&rp, &cp);
    let raw_scale = sorted.get(0, 0);
    if raw_scale == Rational::from_integer(0.into()) {
        return Err(Error::Internal("top-left entry of ψ_{b,0} vanishes".into()));
    }
    let matrix = sorted.scale(&(Rational::from_integer(1.into()) / &raw_scale));
    let s0 = BasisSpace::sym(b - 1, &sl2_space(b));
    let w1 = BasisSpace::wedge(b, &sl2_space(2 * b - 2));
    Ok(HermiteMatrix {
        b,
        matrix,
        raw_scale,
        row_labels: rp.iter().map(|&i| s0.name(i)).collect(),
        col_labels: cp.iter().map(|&j| w1.name(j)).collect(),
        row_weights: rp.iter().map(|&i| rw[i]).collect(),
        col_weights: cp.iter().map(|&j| cw[j]).collect(),
    })
}

/// The classical Hermite isomorphism `∧^3 Sym^4 U → Sym^2 Sym^3 U`, in the
/// same display order. Only `b = 3` is stored.
pub fn classical_hermite_matrix(b: usize) -> Result<SparseMatrix> {
    if b != 3 {
        return Err(Error::InvalidInput(format!("the classical matrix is stored for b = 3 only, got {b}")));
    }
    let entries: [(usize, usize, i64); 13] = [
        (0, 0, 1),
        (1, 1, 3),
        (2, 2, 3),
        (2, 3, -3),
        (3, 3, 9),
        (4, 4, -1),
        (4, 5, 1),
        (5, 4, 9),
        (6, 6, -3),
        (6, 7, 3),
        (7, 7, 9),
        (8, 8, 3),
        (9, 9, 1),
    ];
    Ok(SparseMatrix::from_triplets(10, 10, entries.iter().map(|&(r, c, v)| (r, c, rat(v, 1)))))
}

/// One diagonal block of a weight-graded comparison; indices are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct BlockDiff {
    pub weight: i64,
    pub indices: Vec<usize>,
    pub differs: bool,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
}

/// Compares two matrices block by block along runs of equal weight.
pub fn weight_block_diff(left: &SparseMatrix, right: &SparseMatrix, weights: &[i64]) -> Vec<BlockDiff> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < weights.len() {
        let mut end = start;
        while end < weights.len() && weights[end] == weights[start] {
            end += 1;
        }
        let idx: Vec<usize> = (start..end).collect();
        let block = |m: &SparseMatrix| -> Vec<Vec<String>> {
            idx.iter().map(|&r| idx.iter().map(|&c| format_rational(&m.get(r, c))).collect()).collect()
        };
        let (l, r) = (block(left), block(right));
        out.push(BlockDiff {
            weight: weights[start],
            indices: idx.iter().map(|i| i + 1).collect(),
            differs: l != r,
            left: l,
            right: r,
        });
        start = end;
    }
    out
}
