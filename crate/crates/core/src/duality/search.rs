//! Search for an isomorphism between two complexes of graded free modules,
//! independent of any structure they were built from.
//!
//! Every homogeneous chain map is an unknown point of a linear space cut out by
//! the commutation equations. A point is an isomorphism exactly when the
//! constant part of every block is invertible, so the search samples the
//! solution space at random and, if nothing is found, decides whether the
//! determinant of some constant block vanishes identically on it.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ChainMap, GradedComplex, PolyMap};
use crate::error::{Error, Result};
use crate::linalg::{int, Rational, SparseMatrix};
use crate::poly::{determinant, Poly};

pub const DEFAULT_SEEDS: u64 = 16;

#[derive(Clone, Debug)]
pub enum IsoSearch {
    /// An isomorphism from the first complex to the second twisted by `twist`.
    Found { twist: i64, seed: u64, solution_dim: usize, map: ChainMap },
    /// A proof that no isomorphism exists for any overall twist.
    NoneExists { solution_dim: usize, reason: String },
}

impl IsoSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoSearch::Found { .. })
    }
}

#[derive(Clone, Debug)]
struct Unknown {
    pos: i64,
    row: usize,
    col: usize,
    exps: Vec<usize>,
}

fn sorted_twists(c: &GradedComplex, p: i64) -> Vec<i64> {
    let mut t = c.term(p).generator_twists();
    t.sort_unstable();
    t
}

/// The overall twist that makes generator degrees agree, or the reason none does.
fn alignment(c1: &GradedComplex, c2: &GradedComplex) -> std::result::Result<i64, String> {
    if c1.positions() != c2.positions() {
        return Err(format!("terms occupy positions {:?} and {:?}", c1.positions(), c2.positions()));
    }
    if c1.ranks() != c2.ranks() {
        return Err(format!("ranks {:?} and {:?} differ", c1.ranks(), c2.ranks()));
    }
    let first = c1.positions().find(|&p| c1.term(p).rank() > 0);
    let shift = match first {
        Some(p) => sorted_twists(c1, p)[0] - sorted_twists(c2, p)[0],
        None => 0,
    };
    for p in c1.positions() {
        let moved: Vec<i64> = sorted_twists(c2, p).iter().map(|t| t + shift).collect();
        if sorted_twists(c1, p) != moved {
            return Err(format!("generator degrees differ at position {p} under every twist"));
        }
    }
    Ok(shift)
}

fn unknowns(c1: &GradedComplex, c2: &GradedComplex) -> Vec<Unknown> {
    let ring = c1.ring;
    let mut out = Vec::new();
    for p in c1.positions() {
        let (st, tt) = (c1.term(p).generator_twists(), c2.term(p).generator_twists());
        for (col, s) in st.iter().enumerate() {
            for (row, t) in tt.iter().enumerate() {
                if s >= t {
                    for exps in ring.monomials((s - t) as usize) {
                        out.push(Unknown { pos: p, row, col, exps });
                    }
                }
            }
        }
    }
    out
}

fn add_exps(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The commutation equations `d2 X_p - X_{p-1} d1 = 0`, one column per unknown.
fn commutation_system(c1: &GradedComplex, c2: &GradedComplex, unk: &[Unknown]) -> SparseMatrix {
    let mut eq: HashMap<(i64, usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut trip: Vec<(usize, usize, Rational)> = Vec::new();
    let mut rows_of_d1: BTreeMap<i64, Vec<Vec<(usize, Poly)>>> = BTreeMap::new();
    for p in c1.positions() {
        let d = c1.diff(p);
        let mut rows = vec![Vec::new(); d.shape().0];
        for (r, c, e) in d.entries() {
            rows[r].push((c, e.clone()));
        }
        rows_of_d1.insert(p, rows);
    }
    let mut push = |key: (i64, usize, usize, Vec<usize>), u: usize, v: Rational| {
        let n = eq.len();
        let idx = *eq.entry(key).or_insert(n);
        trip.push((idx, u, v));
    };
    for (u, x) in unk.iter().enumerate() {
        // d2_p X_p, square at p
        let d2 = c2.diff(x.pos);
        for (r2, e) in d2.column(x.row) {
            for (m, v) in e.terms() {
                push((x.pos, *r2, x.col, add_exps(m, &x.exps)), u, v.clone());
            }
        }
        // X_p d1_{p+1}, square at p + 1
        if let Some(rows) = rows_of_d1.get(&(x.pos + 1)) {
            if let Some(row) = rows.get(x.col) {
                for (c1col, e) in row {
                    for (m, v) in e.terms() {
                        push((x.pos + 1, x.row, *c1col, add_exps(m, &x.exps)), u, -v.clone());
                    }
                }
            }
        }
    }
    SparseMatrix::from_triplets(eq.len(), unk.len(), trip)
}

fn constant_block(c1: &GradedComplex, c2: &GradedComplex, unk: &[Unknown], x: &[Rational], p: i64) -> SparseMatrix {
    let trip = unk
        .iter()
        .zip(x)
        .filter(|(u, v)| u.pos == p && u.exps.iter().all(|&e| e == 0) && !v.is_zero())
        .map(|(u, v)| (u.row, u.col, v.clone()));
    SparseMatrix::from_triplets(c2.term(p).rank(), c1.term(p).rank(), trip)
}

fn assemble(c1: &GradedComplex, c2: &GradedComplex, unk: &[Unknown], x: &[Rational]) -> Result<ChainMap> {
    let nv = c1.ring.num_vars;
    let mut entries: BTreeMap<i64, Vec<(usize, usize, Poly)>> = BTreeMap::new();
    for (u, v) in unk.iter().zip(x) {
        if !v.is_zero() {
            entries.entry(u.pos).or_default().push((u.row, u.col, Poly::monomial(u.exps.clone(), v.clone())));
        }
    }
    debug_assert!(unk.iter().all(|u| u.exps.len() == nv));
    let mut blocks = BTreeMap::new();
    for p in c1.positions() {
        let e = entries.remove(&p).unwrap_or_default();
        blocks.insert(p, PolyMap::from_entries(c1.ring, c1.term(p), c2.term(p), e)?);
    }
    Ok(ChainMap { source: c1.clone(), target: c2.clone(), shift: 0, blocks })
}

fn dense_column_values(k: &SparseMatrix, lambda: &[Rational]) -> Vec<Rational> {
    let v: Vec<(usize, Rational)> =
        lambda.iter().enumerate().filter(|(_, l)| !l.is_zero()).map(|(i, l)| (i, l.clone())).collect();
    let mut out = vec![Rational::zero(); k.rows()];
    for (i, q) in k.mul_vec(&v) {
        out[i] = q;
    }
    out
}

/// [`generic_chain_iso_search_with`] with [`DEFAULT_SEEDS`] random points.
pub fn generic_chain_iso_search(c1: &GradedComplex, c2: &GradedComplex) -> Result<IsoSearch> {
    generic_chain_iso_search_with(c1, c2, DEFAULT_SEEDS)
}

/// Looks for an isomorphism `c1 ≅ c2(t)` for some overall twist `t`. Tries
/// `seeds` random points of the space of chain maps; if none is invertible,
/// checks symbolically whether invertibility fails identically, and otherwise
/// returns [`Error::Inconclusive`].
pub fn generic_chain_iso_search_with(c1: &GradedComplex, c2: &GradedComplex, seeds: u64) -> Result<IsoSearch> {
    if c1.ring != c2.ring {
        return Err(Error::InvalidInput("complexes over different rings".into()));
    }
    let twist = match alignment(c1, c2) {
        Ok(t) => t,
        Err(reason) => return Ok(IsoSearch::NoneExists { solution_dim: 0, reason }),
    };
    let c2 = c2.twisted(twist);
    let unk = unknowns(c1, &c2);
    let kernel = commutation_system(c1, &c2, &unk).kernel_basis();
    let k = kernel.cols();
    let live: Vec<i64> = c1.positions().filter(|&p| c1.term(p).rank() > 0).collect();
    if k == 0 && !live.is_empty() {
        return Ok(IsoSearch::NoneExists { solution_dim: 0, reason: "the only chain map is zero".into() });
    }
    for seed in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda: Vec<Rational> = (0..k).map(|_| int(rng.gen_range(-9..=9))).collect();
        let x = dense_column_values(&kernel, &lambda);
        if live.iter().all(|&p| constant_block(c1, &c2, &unk, &x, p).is_invertible()) {
            let map = assemble(c1, &c2, &unk, &x)?;
            if let Err(w) = map.verify()? {
                return Err(Error::Internal(format!("solved chain map fails to commute: {w}")));
            }
            return Ok(IsoSearch::Found { twist, seed, solution_dim: k, map });
        }
    }
    let cols = kernel.columns();
    for &p in &live {
        let n = c1.term(p).rank();
        let mut m = vec![vec![Poly::zero(k); n]; n];
        for (u, x) in unk.iter().enumerate() {
            if x.pos != p || x.exps.iter().any(|&e| e != 0) {
                continue;
            }
            for (t, col) in cols.iter().enumerate() {
                if let Ok(i) = col.binary_search_by_key(&u, |(i, _)| *i) {
                    let term = Poly::var(k, t).scale(&col[i].1);
                    m[x.row][x.col] = &m[x.row][x.col] + &term;
                }
            }
        }
        if determinant(&m, k).is_zero() {
            return Ok(IsoSearch::NoneExists {
                solution_dim: k,
                reason: format!("the constant block at position {p} is singular on the whole {k}-dimensional space of chain maps"),
            });
        }
    }
    Err(Error::Inconclusive(seeds as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::en::{en_complex, generic_phi};

    #[test]
    fn finds_identity_class() {
        let phi = generic_phi(2, 3).unwrap();
        let c = en_complex(&phi, 0).unwrap().complex;
        let r = generic_chain_iso_search(&c, &c.twisted(2)).unwrap();
        match r {
            IsoSearch::Found { twist, .. } => assert_eq!(twist, -2),
            other => panic!("expected an isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn rank_mismatch_is_none() {
        let phi = generic_phi(2, 3).unwrap();
        let a = en_complex(&phi, 0).unwrap().complex;
        let b = en_complex(&phi, 1).unwrap().complex;
        assert!(!generic_chain_iso_search(&a, &b).unwrap().is_found());
    }
}
