//! Exact Gaussian elimination: rank, reduced row echelon form, kernels and
//! linear solves.
//!
//! Matrices are first split into connected components of the bipartite
//! row/column incidence graph. Graded or weight-homogeneous maps fall apart
//! into many small blocks this way, and each block is eliminated on its own.
//! Pivoting is deterministic: the leftmost column with a nonzero entry, and
//! among the candidate rows the one with the fewest nonzeros (ties go to the
//! earliest row).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::sparse::{axpy, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// A connected block: global row and column indices, both ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Connected components, ordered by their smallest node. Zero rows and zero
/// columns form singleton components.
pub fn components(m: &SparseMatrix) -> Vec<Component> {
    let (nr, nc) = m.shape();
    let mut uf = UnionFind::new(nr + nc);
    for (r, row) in m.row_vecs().iter().enumerate() {
        for (c, _) in row {
            uf.union(r, nr + c);
        }
    }
    let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
    for r in 0..nr {
        let root = uf.find(r);
        by_root
            .entry(root)
            .or_insert_with(|| Component { rows: Vec::new(), cols: Vec::new() })
            .rows
            .push(r);
    }
    for c in 0..nc {
        let root = uf.find(nr + c);
        by_root
            .entry(root)
            .or_insert_with(|| Component { rows: Vec::new(), cols: Vec::new() })
            .cols
            .push(c);
    }
    by_root.into_values().collect()
}

/// Restricts `m` to a component, renumbering columns locally.
fn local_rows(m: &SparseMatrix, comp: &Component) -> Vec<SparseVec> {
    let local: HashMap<usize, usize> = comp.cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    comp.rows
        .iter()
        .map(|&r| m.row(r).iter().map(|(c, v)| (local[c], v.clone())).collect())
        .collect()
}

/// Forward elimination over columns `0..pivot_limit`. Returns pivot rows
/// (leading entry 1, ascending leading column) and rows whose leading column
/// is at or beyond the limit.
fn forward(rows: Vec<SparseVec>, pivot_limit: usize) -> (Vec<SparseVec>, Vec<SparseVec>) {
    let mut buckets: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for row in rows.into_iter().filter(|r| !r.is_empty()) {
        buckets.entry(row[0].0).or_default().push(row);
    }
    let mut pivots = Vec::new();
    let mut rest = Vec::new();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        if col >= pivot_limit {
            rest.extend(bucket);
            rest.extend(buckets.into_values().flatten());
            break;
        }
        let best = bucket
            .iter()
            .enumerate()
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("nonempty bucket");
        let mut pivot = bucket.swap_remove(best);
        let inv = pivot[0].1.recip();
        if !inv.is_one() {
            for (_, v) in pivot.iter_mut() {
                *v *= &inv;
            }
        }
        for row in bucket {
            let s = -row[0].1.clone();
            let reduced = axpy(&row, &s, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                buckets.entry(lead).or_default().push(reduced);
            }
        }
        pivots.push(pivot);
    }
    (pivots, rest)
}

/// Clears every pivot column from the other pivot rows.
fn back_substitute(pivots: &mut [SparseVec]) {
    let pivot_index: HashMap<usize, usize> =
        pivots.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
    for i in (0..pivots.len()).rev() {
        let mut row = std::mem::take(&mut pivots[i]);
        let mut k = 1;
        while k < row.len() {
            let c = row[k].0;
            match pivot_index.get(&c) {
                Some(&j) if j > i => {
                    let s = -row[k].1.clone();
                    row = axpy(&row, &s, &pivots[j]);
                }
                _ => k += 1,
            }
        }
        pivots[i] = row;
    }
}

/// Reduced row echelon form of a block, as pivot rows only.
fn rref_rows(rows: Vec<SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let (mut pivots, rest) = forward(rows, ncols);
    debug_assert!(rest.is_empty());
    back_substitute(&mut pivots);
    pivots
}

impl SparseMatrix {
    pub fn rank(&self) -> usize {
        components(self)
            .iter()
            .filter(|c| !c.rows.is_empty() && !c.cols.is_empty())
            .map(|comp| {
                if comp.rows.len() == 1 || comp.cols.len() == 1 {
                    return 1;
                }
                forward(local_rows(self, comp), comp.cols.len()).0.len()
            })
            .sum()
    }

    /// The reduced row echelon form, with zero rows removed.
    pub fn rref(&self) -> SparseMatrix {
        let mut all: Vec<SparseVec> = Vec::new();
        for comp in components(self) {
            if comp.rows.is_empty() || comp.cols.is_empty() {
                continue;
            }
            for row in rref_rows(local_rows(self, &comp), comp.cols.len()) {
                all.push(row.into_iter().map(|(c, v)| (comp.cols[c], v)).collect());
            }
        }
        all.sort_by_key(|r| r[0].0);
        SparseMatrix::from_rows(self.cols(), all)
    }

    /// Pivot columns of the reduced row echelon form, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().row_vecs().iter().map(|r| r[0].0).collect()
    }

    /// A basis of the right kernel, one column per free column of the
    /// reduced echelon form, ordered by free column. Column `k` has a 1 in its
    /// free position, zeros in every other free position, and is therefore
    /// uniquely determined by the row space of `self`.
    pub fn kernel_basis(&self) -> SparseMatrix {
        let mut vectors: Vec<(usize, SparseVec)> = Vec::new();
        for comp in components(self) {
            if comp.rows.is_empty() {
                for &c in &comp.cols {
                    vectors.push((c, vec![(c, Rational::one())]));
                }
                continue;
            }
            let rows = rref_rows(local_rows(self, &comp), comp.cols.len());
            let mut is_pivot = vec![false; comp.cols.len()];
            let mut by_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); comp.cols.len()];
            for row in &rows {
                let p = row[0].0;
                is_pivot[p] = true;
                for (c, v) in &row[1..] {
                    by_col[*c].push((comp.cols[p], -v.clone()));
                }
            }
            for (f, pivot) in is_pivot.iter().enumerate() {
                if *pivot {
                    continue;
                }
                let mut v = std::mem::take(&mut by_col[f]);
                v.push((comp.cols[f], Rational::one()));
                v.sort_by_key(|(i, _)| *i);
                vectors.push((comp.cols[f], v));
            }
        }
        vectors.sort_by_key(|(f, _)| *f);
        let cols: Vec<SparseVec> = vectors.into_iter().map(|(_, v)| v).collect();
        SparseMatrix::from_columns(self.cols(), &cols)
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }

    /// Some `x` with `self * x = b`, or `None` when a column of `b` is outside
    /// the column space. Free variables are set to zero, so `x` is unique
    /// when `self` has full column rank.
    pub fn solve_in_column_space(&self, b: &SparseMatrix) -> Result<Option<SparseMatrix>> {
        if self.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "system matrix has {} rows, right-hand side {}",
                self.rows(),
                b.rows()
            )));
        }
        let n = self.cols();
        let mut triplets: Vec<(usize, usize, Rational)> = Vec::new();
        for comp in components(self) {
            if comp.rows.is_empty() {
                continue;
            }
            let local: HashMap<usize, usize> =
                comp.cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let k = comp.cols.len();
            let rows: Vec<SparseVec> = comp
                .rows
                .iter()
                .map(|&r| {
                    let mut row: SparseVec =
                        self.row(r).iter().map(|(c, v)| (local[c], v.clone())).collect();
                    row.extend(b.row(r).iter().map(|(c, v)| (k + c, v.clone())));
                    row
                })
                .collect();
            let (mut pivots, rest) = forward(rows, k);
            if !rest.is_empty() {
                return Ok(None);
            }
            back_substitute(&mut pivots);
            for row in pivots {
                let p = comp.cols[row[0].0];
                for (c, v) in row.into_iter().filter(|(c, _)| *c >= k) {
                    triplets.push((p, c - k, v));
                }
            }
        }
        Ok(Some(SparseMatrix::from_triplets(n, b.cols(), triplets)))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows() == self.cols() && self.rank() == self.rows()
    }

    pub fn inverse(&self) -> Option<SparseMatrix> {
        if !self.is_invertible() {
            return None;
        }
        self.solve_in_column_space(&SparseMatrix::identity(self.rows()))
            .ok()
            .flatten()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows() != self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let mut rows: Vec<SparseVec> = self.row_vecs().to_vec();
        let n = rows.len();
        let mut det = Rational::one();
        for col in 0..n {
            let found = (col..n)
                .filter(|&r| rows[r].first().is_some_and(|(c, _)| *c == col))
                .min_by_key(|&r| rows[r].len());
            let Some(p) = found else {
                return Ok(Rational::zero());
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col].clone();
            det *= &pivot[0].1;
            let inv = pivot[0].1.recip();
            for r in col + 1..n {
                if rows[r].first().is_some_and(|(c, _)| *c == col) {
                    let s = -(&rows[r][0].1 * &inv);
                    rows[r] = axpy(&rows[r], &s, &pivot);
                }
            }
        }
        Ok(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(prop_oneof![4 => Just(0i64), 3 => -3i64..4], r * c).prop_map(
                move |v| {
                    let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
                    SparseMatrix::from_i64(&rows)
                },
            )
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
        assert_eq!(SparseMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(SparseMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(SparseMatrix::identity(3).kernel_basis().cols(), 0);
        let k = SparseMatrix::from_i64(&[vec![1, -1]]).kernel_basis();
        assert_eq!(k, SparseMatrix::from_i64(&[vec![1], vec![1]]));
        let z = SparseMatrix::zeros(1, 2).kernel_basis();
        assert_eq!(z, SparseMatrix::identity(2));
    }

    #[test]
    fn solve_examples() {
        let b = SparseMatrix::from_i64(&[vec![1, 5], vec![-2, 0]]);
        let x = SparseMatrix::identity(2).solve_in_column_space(&b).unwrap();
        assert_eq!(x, Some(b));
        let a = SparseMatrix::from_i64(&[vec![1], vec![2]]);
        let x = a.solve_in_column_space(&SparseMatrix::from_i64(&[vec![2], vec![4]])).unwrap();
        assert_eq!(x, Some(SparseMatrix::from_i64(&[vec![2]])));
        let none = a.solve_in_column_space(&SparseMatrix::from_i64(&[vec![1], vec![0]])).unwrap();
        assert_eq!(none, None);
        assert!(a.solve_in_column_space(&SparseMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = SparseMatrix::from_i64(&[vec![0, 2, 1], vec![1, 0, 0], vec![3, 1, 1]]);
        assert_eq!(m.determinant().unwrap(), int(-1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, SparseMatrix::identity(3));
        assert!(SparseMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn block_diagonal_components() {
        let m = SparseMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, 2], vec![0, 0, 0]]);
        let comps = components(&m);
        assert_eq!(comps.len(), 4);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_basis(), SparseMatrix::from_i64(&[vec![0], vec![1], vec![0]]));
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_is_annihilated(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.cols(), m.cols() - m.rank());
            prop_assert!((&m * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn kernel_is_canonical(m in small_matrix(), s in 1i64..5) {
            // row operations do not change the canonical kernel
            let scaled = m.scale(&int(s));
            let stacked = m.vstack(&scaled).unwrap();
            prop_assert_eq!(stacked.kernel_basis(), m.kernel_basis());
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), x in proptest::collection::vec(-3i64..4, 6)) {
            let xs: Vec<Vec<i64>> = (0..m.cols()).map(|i| vec![x[i]]).collect();
            let b = &m * &SparseMatrix::from_i64(&xs);
            let sol = m.solve_in_column_space(&b).unwrap().expect("b is in the column space");
            prop_assert_eq!(&m * &sol, b);
        }

        #[test]
        fn rref_has_same_rank(m in small_matrix()) {
            let r = m.rref();
            prop_assert_eq!(r.rows(), m.rank());
            prop_assert_eq!(r.kernel_basis(), m.kernel_basis());
        }
    }
}
