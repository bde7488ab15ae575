//! Finite-dimensional spaces with enumerated bases, and the structure maps of
//! the symmetric, exterior and divided-power algebras between them.
//!
//! Basis orders are fixed once and for all:
//! * `Sym^k` and `D^k` are labelled by weakly increasing index tuples in
//!   lexicographic order, i.e. monomials in graded-lex order with
//!   `e_0 > e_1 > ...`;
//! * `∧^k` by strictly increasing tuples in lexicographic order;
//! * tensor products row-major (last factor varies fastest);
//! * duals by the dual basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combin::{
    exponents, multiset_merge, multiset_splits, multisets, shuffles, subsets, wedge_merge,
};
use crate::error::{Error, Result};
use crate::linalg::{int, Rational, SparseMatrix, SparseVec};

#[derive(Clone, PartialEq, Eq)]
pub enum SpaceKind {
    Free { dim: usize, names: Vec<String> },
    Sym { power: usize, inner: BasisSpace },
    Wedge { power: usize, inner: BasisSpace },
    Divided { power: usize, inner: BasisSpace },
    Tensor(Vec<BasisSpace>),
    Dual(BasisSpace),
    Subspace { ambient: BasisSpace, span: SparseMatrix },
}

struct SpaceData {
    kind: SpaceKind,
    labels: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Clone)]
pub struct BasisSpace(Arc<SpaceData>);

impl PartialEq for BasisSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for BasisSpace {}

impl fmt::Debug for BasisSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl BasisSpace {
    fn build(kind: SpaceKind, labels: Vec<Vec<usize>>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        BasisSpace(Arc::new(SpaceData { kind, labels, index }))
    }

    pub fn free(dim: usize) -> Self {
        Self::build(SpaceKind::Free { dim, names: Vec::new() }, (0..dim).map(|i| vec![i]).collect())
    }

    pub fn free_named(names: Vec<String>) -> Self {
        let dim = names.len();
        Self::build(SpaceKind::Free { dim, names }, (0..dim).map(|i| vec![i]).collect())
    }

    pub fn sym(power: usize, inner: &BasisSpace) -> Self {
        let labels = multisets(inner.dim(), power);
        Self::build(SpaceKind::Sym { power, inner: inner.clone() }, labels)
    }

    pub fn wedge(power: usize, inner: &BasisSpace) -> Self {
        let labels = subsets(inner.dim(), power);
        Self::build(SpaceKind::Wedge { power, inner: inner.clone() }, labels)
    }

    pub fn divided(power: usize, inner: &BasisSpace) -> Self {
        let labels = multisets(inner.dim(), power);
        Self::build(SpaceKind::Divided { power, inner: inner.clone() }, labels)
    }

    pub fn tensor(factors: &[BasisSpace]) -> Self {
        let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
        for f in factors {
            let mut next = Vec::with_capacity(labels.len() * f.dim());
            for l in &labels {
                for i in 0..f.dim() {
                    let mut t = l.clone();
                    t.push(i);
                    next.push(t);
                }
            }
            labels = next;
        }
        Self::build(SpaceKind::Tensor(factors.to_vec()), labels)
    }

    pub fn dual(inner: &BasisSpace) -> Self {
        Self::build(SpaceKind::Dual(inner.clone()), (0..inner.dim()).map(|i| vec![i]).collect())
    }

    /// The span of the columns of `span` inside `ambient`; the columns must be
    /// linearly independent.
    pub fn subspace(ambient: &BasisSpace, span: SparseMatrix) -> Result<Self> {
        if span.rows() != ambient.dim() {
            return Err(Error::DimensionMismatch(format!(
                "spanning matrix has {} rows, ambient space has dimension {}",
                span.rows(),
                ambient.dim()
            )));
        }
        let rank = span.rank();
        if rank < span.cols() {
            return Err(Error::RankDeficient { rank, cols: span.cols() });
        }
        let k = span.cols();
        Ok(Self::build(
            SpaceKind::Subspace { ambient: ambient.clone(), span },
            (0..k).map(|i| vec![i]).collect(),
        ))
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.0.kind
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn label(&self, i: usize) -> &[usize] {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &[usize]) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// Index of a label known to be valid.
    pub fn idx(&self, label: &[usize]) -> usize {
        match self.index_of(label) {
            Some(i) => i,
            None => panic!("label {label:?} not in {}", self.describe()),
        }
    }

    /// The underlying space of a power or dual.
    pub fn inner(&self) -> Option<&BasisSpace> {
        match self.kind() {
            SpaceKind::Sym { inner, .. }
            | SpaceKind::Wedge { inner, .. }
            | SpaceKind::Divided { inner, .. }
            | SpaceKind::Dual(inner) => Some(inner),
            SpaceKind::Subspace { ambient, .. } => Some(ambient),
            _ => None,
        }
    }

    pub fn power(&self) -> Option<usize> {
        match self.kind() {
            SpaceKind::Sym { power, .. } | SpaceKind::Wedge { power, .. } | SpaceKind::Divided { power, .. } => {
                Some(*power)
            }
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[BasisSpace]> {
        match self.kind() {
            SpaceKind::Tensor(f) => Some(f),
            _ => None,
        }
    }

    /// Exponent vector of a `Sym` or `D` basis element.
    pub fn exponent_vector(&self, i: usize) -> Vec<usize> {
        let n = self.inner().map_or(0, BasisSpace::dim);
        exponents(self.label(i), n)
    }

    /// Index of a pure tensor in a tensor product space.
    pub fn tensor_index(&self, parts: &[usize]) -> usize {
        let factors = self.factors().expect("tensor_index on a non-tensor space");
        debug_assert_eq!(parts.len(), factors.len());
        parts.iter().zip(factors).fold(0, |acc, (p, f)| acc * f.dim() + p)
    }

    pub fn describe(&self) -> String {
        match self.kind() {
            SpaceKind::Free { dim, .. } => format!("Q^{dim}"),
            SpaceKind::Sym { power, inner } => format!("Sym^{power}({})", inner.describe()),
            SpaceKind::Wedge { power, inner } => format!("Wedge^{power}({})", inner.describe()),
            SpaceKind::Divided { power, inner } => format!("D^{power}({})", inner.describe()),
            SpaceKind::Tensor(fs) => {
                let parts: Vec<String> = fs.iter().map(BasisSpace::describe).collect();
                format!("[{}]", parts.join(" (x) "))
            }
            SpaceKind::Dual(inner) => format!("({})*", inner.describe()),
            SpaceKind::Subspace { ambient, span } => {
                format!("span{}<{}>", span.cols(), ambient.describe())
            }
        }
    }

    /// Human-readable name of basis element `i`.
    pub fn name(&self, i: usize) -> String {
        let label = self.label(i);
        match self.kind() {
            SpaceKind::Free { names, .. } => {
                names.get(i).cloned().unwrap_or_else(|| format!("e{i}"))
            }
            SpaceKind::Sym { inner, .. } => join_or_one(label.iter().map(|&j| inner.name(j)), "·"),
            SpaceKind::Wedge { inner, .. } => join_or_one(label.iter().map(|&j| inner.name(j)), "∧"),
            SpaceKind::Divided { inner, .. } => {
                let e = exponents(label, inner.dim());
                let parts = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(j, &k)| {
                    if k == 1 {
                        inner.name(j)
                    } else {
                        format!("{}^({k})", inner.name(j))
                    }
                });
                join_or_one(parts, "·")
            }
            SpaceKind::Tensor(fs) => {
                let parts: Vec<String> = fs.iter().zip(label).map(|(f, &j)| f.name(j)).collect();
                parts.join("⊗")
            }
            SpaceKind::Dual(inner) => format!("{}*", inner.name(i)),
            SpaceKind::Subspace { .. } => format!("v{i}"),
        }
    }

    /// Coordinates of basis vector `i` in the ambient space of a subspace.
    pub fn ambient_vector(&self, i: usize) -> SparseVec {
        match self.kind() {
            SpaceKind::Subspace { span, .. } => span.column(i),
            _ => vec![(i, Rational::one())],
        }
    }
}

fn join_or_one<I: Iterator<Item = String>>(parts: I, sep: &str) -> String {
    let v: Vec<String> = parts.collect();
    if v.is_empty() {
        "1".to_string()
    } else {
        v.join(sep)
    }
}

/// A linear map between based spaces; `matrix` is `dim(target) x dim(source)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub source: BasisSpace,
    pub target: BasisSpace,
    pub matrix: SparseMatrix,
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap {:?} -> {:?}: {:?}", self.source, self.target, self.matrix)
    }
}

impl LinearMap {
    pub fn new(source: BasisSpace, target: BasisSpace, matrix: SparseMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "matrix {:?} for a map {} -> {}",
                matrix.shape(),
                source.dim(),
                target.dim()
            )));
        }
        Ok(LinearMap { source, target, matrix })
    }

    pub fn identity(space: &BasisSpace) -> Self {
        LinearMap {
            source: space.clone(),
            target: space.clone(),
            matrix: SparseMatrix::identity(space.dim()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.dim(),
                self.target.dim(),
                other.source.dim(),
                other.target.dim()
            )));
        }
        Ok(LinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.try_mul(&other.matrix)?,
        })
    }

    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            source: BasisSpace::tensor(&[self.source.clone(), other.source.clone()]),
            target: BasisSpace::tensor(&[self.target.clone(), other.target.clone()]),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// The transpose map between dual spaces.
    pub fn dual(&self) -> LinearMap {
        LinearMap {
            source: BasisSpace::dual(&self.target),
            target: BasisSpace::dual(&self.source),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn split_check(k: usize, p: usize, q: usize) -> Result<()> {
    if p + q != k {
        return Err(Error::InvalidSplit { k, p, q });
    }
    Ok(())
}

fn expect_power(space: &BasisSpace, want: &str) -> Result<(usize, BasisSpace)> {
    let ok = matches!(
        (space.kind(), want),
        (SpaceKind::Wedge { .. }, "wedge") | (SpaceKind::Sym { .. }, "sym") | (SpaceKind::Divided { .. }, "divided")
    );
    if !ok {
        return Err(Error::WrongSpace(format!("expected a {want} power, got {}", space.describe())));
    }
    Ok((space.power().unwrap_or(0), space.inner().cloned().expect("power has an inner space")))
}

/// `∧^k V -> ∧^p V ⊗ ∧^q V`, `e_A ↦ Σ sign(S, A∖S) e_S ⊗ e_{A∖S}`.
pub fn comultiply_wedge(space: &BasisSpace, p: usize, q: usize) -> Result<LinearMap> {
    let (k, inner) = expect_power(space, "wedge")?;
    split_check(k, p, q)?;
    let target = BasisSpace::tensor(&[BasisSpace::wedge(p, &inner), BasisSpace::wedge(q, &inner)]);
    let (left, right) = (&target.factors().expect("tensor")[0], &target.factors().expect("tensor")[1]);
    let mut trip = Vec::new();
    for (col, a) in space.labels().iter().enumerate() {
        for (sign, s, t) in shuffles(a, p) {
            let row = target.tensor_index(&[left.idx(&s), right.idx(&t)]);
            trip.push((row, col, int(sign)));
        }
    }
    LinearMap::new(space.clone(), target.clone(), SparseMatrix::from_triplets(target.dim(), space.dim(), trip))
}

/// `∧^p V ⊗ ∧^q V -> ∧^{p+q} V`.
pub fn multiply_wedge(p: usize, q: usize, inner: &BasisSpace) -> LinearMap {
    let (a, b) = (BasisSpace::wedge(p, inner), BasisSpace::wedge(q, inner));
    let source = BasisSpace::tensor(&[a.clone(), b.clone()]);
    let target = BasisSpace::wedge(p + q, inner);
    let mut trip = Vec::new();
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            if let Some((sign, m)) = wedge_merge(a.label(i), b.label(j)) {
                trip.push((target.idx(&m), source.tensor_index(&[i, j]), int(sign)));
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), source.dim(), trip);
    LinearMap { source, target, matrix }
}

/// `Sym^p V ⊗ Sym^q V -> Sym^{p+q} V`, all coefficients 1.
pub fn multiply_sym(p: usize, q: usize, inner: &BasisSpace) -> LinearMap {
    let (a, b) = (BasisSpace::sym(p, inner), BasisSpace::sym(q, inner));
    let source = BasisSpace::tensor(&[a.clone(), b.clone()]);
    let target = BasisSpace::sym(p + q, inner);
    let mut trip = Vec::new();
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let m = multiset_merge(a.label(i), b.label(j));
            trip.push((target.idx(&m), source.tensor_index(&[i, j]), Rational::one()));
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), source.dim(), trip);
    LinearMap { source, target, matrix }
}

/// `Sym^k V -> Sym^p V ⊗ Sym^q V`, the coproduct with `Δ(v) = v⊗1 + 1⊗v`.
pub fn comultiply_sym(space: &BasisSpace, p: usize, q: usize) -> Result<LinearMap> {
    let (k, inner) = expect_power(space, "sym")?;
    split_check(k, p, q)?;
    Ok(power_split(space, &BasisSpace::sym(p, &inner), &BasisSpace::sym(q, &inner), true))
}

/// `D^k V -> D^p V ⊗ D^q V`, `e^(a) ↦ Σ_{a'+a''=a} e^(a') ⊗ e^(a'')`.
pub fn comultiply_divided(space: &BasisSpace, p: usize, q: usize) -> Result<LinearMap> {
    let (k, inner) = expect_power(space, "divided")?;
    split_check(k, p, q)?;
    Ok(power_split(space, &BasisSpace::divided(p, &inner), &BasisSpace::divided(q, &inner), false))
}

fn power_split(space: &BasisSpace, left: &BasisSpace, right: &BasisSpace, weighted: bool) -> LinearMap {
    let target = BasisSpace::tensor(&[left.clone(), right.clone()]);
    let mut trip = Vec::new();
    for (col, m) in space.labels().iter().enumerate() {
        for (mult, s, t) in multiset_splits(m, left.power().unwrap_or(0)) {
            let coeff = if weighted { int(mult as i64) } else { Rational::one() };
            trip.push((target.tensor_index(&[left.idx(&s), right.idx(&t)]), col, coeff));
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), space.dim(), trip);
    LinearMap { source: space.clone(), target, matrix }
}

/// `D^p V ⊗ D^q V -> D^{p+q} V`, `e^(a) e^(a') = Π C(a_k+a'_k, a_k) e^(a+a')`.
pub fn multiply_divided(p: usize, q: usize, inner: &BasisSpace) -> LinearMap {
    let (a, b) = (BasisSpace::divided(p, inner), BasisSpace::divided(q, inner));
    let source = BasisSpace::tensor(&[a.clone(), b.clone()]);
    let target = BasisSpace::divided(p + q, inner);
    let mut trip = Vec::new();
    for i in 0..a.dim() {
        let ea = a.exponent_vector(i);
        for j in 0..b.dim() {
            let eb = b.exponent_vector(j);
            let coeff: i64 = ea
                .iter()
                .zip(&eb)
                .map(|(&x, &y)| crate::linalg::rational::binomial((x + y) as i64, x as i64) as i64)
                .product();
            let m = multiset_merge(a.label(i), b.label(j));
            trip.push((target.idx(&m), source.tensor_index(&[i, j]), int(coeff)));
        }
    }
    let matrix = SparseMatrix::from_triplets(target.dim(), source.dim(), trip);
    LinearMap { source, target, matrix }
}

/// Gram matrix of the pairing `D^k V × Sym^k V* -> Q`: rows index `D^k V`,
/// columns index `Sym^k V*`; matching monomials pair to 1.
pub fn divided_sym_pairing(k: usize, inner: &BasisSpace) -> SparseMatrix {
    SparseMatrix::identity(BasisSpace::divided(k, inner).dim())
}

/// Wedge product of sparse vectors given in `∧^p` and `∧^q` coordinates.
pub fn wedge_vectors(
    a: &SparseVec,
    pa: &BasisSpace,
    b: &SparseVec,
    pb: &BasisSpace,
    target: &BasisSpace,
) -> SparseVec {
    let mut acc: HashMap<usize, Rational> = HashMap::new();
    for (i, x) in a {
        for (j, y) in b {
            if let Some((sign, m)) = wedge_merge(pa.label(*i), pb.label(*j)) {
                let e = acc.entry(target.idx(&m)).or_insert_with(Rational::zero);
                let prod = x * y;
                if sign > 0 {
                    *e += prod;
                } else {
                    *e -= prod;
                }
            }
        }
    }
    let mut v: SparseVec = acc.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// `∧^k f`: the entry at `(I, J)` is the minor of `f` on rows `I`, columns `J`.
pub fn wedge_power_of_map(f: &LinearMap, k: usize) -> LinearMap {
    let source = BasisSpace::wedge(k, &f.source);
    let levels: Vec<BasisSpace> = (0..=k).map(|j| BasisSpace::wedge(j, &f.target)).collect();
    let cols = f.matrix.columns();
    let mut cache: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    cache.insert(Vec::new(), vec![(0, Rational::one())]);
    let out_cols: Vec<SparseVec> =
        source.labels().iter().map(|label| wedge_prefix(label, &cols, &levels, &mut cache)).collect();
    let target = levels[k].clone();
    let matrix = SparseMatrix::from_columns(target.dim(), &out_cols);
    LinearMap { source, target, matrix }
}

fn wedge_prefix(
    label: &[usize],
    cols: &[SparseVec],
    levels: &[BasisSpace],
    cache: &mut HashMap<Vec<usize>, SparseVec>,
) -> SparseVec {
    if let Some(v) = cache.get(label) {
        return v.clone();
    }
    let (head, last) = label.split_at(label.len() - 1);
    let prev = wedge_prefix(head, cols, levels, cache);
    let v = wedge_vectors(&prev, &levels[head.len()], &cols[last[0]], &levels[1], &levels[label.len()]);
    cache.insert(label.to_vec(), v.clone());
    v
}

/// `Sym^k f`.
pub fn sym_power_of_map(f: &LinearMap, k: usize) -> LinearMap {
    let source = BasisSpace::sym(k, &f.source);
    let target = BasisSpace::sym(k, &f.target);
    let cols = f.matrix.columns();
    let mut out_cols = Vec::with_capacity(source.dim());
    for label in source.labels() {
        let mut acc: HashMap<Vec<usize>, Rational> = HashMap::new();
        acc.insert(Vec::new(), Rational::one());
        for &j in label {
            let mut next: HashMap<Vec<usize>, Rational> = HashMap::new();
            for (m, c) in &acc {
                for (i, v) in &cols[j] {
                    let mm = multiset_merge(m, &[*i]);
                    *next.entry(mm).or_insert_with(Rational::zero) += c * v;
                }
            }
            acc = next;
        }
        let mut v: SparseVec = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (target.idx(&m), c))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        out_cols.push(v);
    }
    let matrix = SparseMatrix::from_columns(target.dim(), &out_cols);
    LinearMap { source, target, matrix }
}

/// The inclusion of a subspace into its ambient space.
pub fn subspace_inclusion(sub: &BasisSpace) -> Result<LinearMap> {
    match sub.kind() {
        SpaceKind::Subspace { ambient, span } => LinearMap::new(sub.clone(), ambient.clone(), span.clone()),
        _ => Err(Error::WrongSpace(format!("{} is not a subspace", sub.describe()))),
    }
}

/// `∧^k(sub) -> ∧^k(ambient)`.
pub fn induced_wedge_inclusion(sub: &BasisSpace, k: usize) -> Result<LinearMap> {
    Ok(wedge_power_of_map(&subspace_inclusion(sub)?, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::permutation_sign;
    use crate::linalg::rational::binomial;
    use proptest::prelude::*;

    fn swap_matrix(n: usize) -> SparseMatrix {
        let trip = (0..n).flat_map(|i| (0..n).map(move |j| (j * n + i, i * n + j, Rational::one())));
        SparseMatrix::from_triplets(n * n, n * n, trip)
    }

    #[test]
    fn dims_match_counts() {
        let v = BasisSpace::free(5);
        for k in 0..5 {
            assert_eq!(BasisSpace::wedge(k, &v).dim() as u64, binomial(5, k as i64));
            assert_eq!(BasisSpace::sym(k, &v).dim() as u64, binomial(4 + k as i64, k as i64));
            assert_eq!(BasisSpace::divided(k, &v).dim(), BasisSpace::sym(k, &v).dim());
        }
        let t = BasisSpace::tensor(&[BasisSpace::wedge(2, &v), BasisSpace::sym(2, &v)]);
        assert_eq!(t.dim(), 150);
        assert_eq!(t.labels().len(), t.dim());
    }

    #[test]
    fn wedge_comultiplication_examples() {
        let v = BasisSpace::free(3);
        let w1 = BasisSpace::wedge(1, &v);
        let d = comultiply_wedge(&w1, 1, 0).unwrap();
        assert_eq!(d.matrix, SparseMatrix::identity(3));
        let w2 = BasisSpace::wedge(2, &v);
        let d = comultiply_wedge(&w2, 1, 1).unwrap();
        let col = d.matrix.column(w2.idx(&[1, 2]));
        let t = &d.target;
        assert_eq!(col, {
            let mut c = vec![(t.tensor_index(&[1, 2]), int(1)), (t.tensor_index(&[2, 1]), int(-1))];
            c.sort_by_key(|x| x.0);
            c
        });
        assert!(matches!(comultiply_wedge(&w2, 2, 1), Err(Error::InvalidSplit { .. })));
    }

    #[test]
    fn wedge_comultiplication_against_brute_force() {
        // Δ_{2,1} followed by multiplication is C(3,1) times the identity,
        // and every coefficient matches the sign of the shuffle permutation.
        let v = BasisSpace::free(4);
        let w3 = BasisSpace::wedge(3, &v);
        let d = comultiply_wedge(&w3, 2, 1).unwrap();
        let m = multiply_wedge(2, 1, &v);
        assert_eq!(&m.matrix * &d.matrix, SparseMatrix::identity(w3.dim()).scale(&int(3)));
        let (l, r) = (&d.target.factors().unwrap()[0], &d.target.factors().unwrap()[1]);
        for (row, col, val) in d.matrix.entries() {
            let parts = d.target.label(row);
            let mut cat = l.label(parts[0]).to_vec();
            cat.extend(r.label(parts[1]));
            let a = w3.label(col);
            let perm: Vec<usize> = cat.iter().map(|x| a.iter().position(|y| y == x).unwrap()).collect();
            assert_eq!(*val, int(permutation_sign(&perm)));
        }
    }

    #[test]
    fn sym_multiplication_examples() {
        let v = BasisSpace::free(2);
        let m0 = multiply_sym(0, 2, &v);
        assert_eq!(m0.matrix, SparseMatrix::identity(3));
        let m = multiply_sym(1, 1, &v);
        let s2 = BasisSpace::sym(2, &v);
        assert_eq!(m.matrix.get(s2.idx(&[0, 0]), m.source.tensor_index(&[0, 0])), int(1));
        let d = comultiply_sym(&s2, 1, 1).unwrap();
        assert_eq!(&d.matrix * &m.matrix, &SparseMatrix::identity(4) + &swap_matrix(2));
    }

    #[test]
    fn divided_comultiplication_examples() {
        let v = BasisSpace::free(1);
        let d1 = BasisSpace::divided(1, &v);
        assert_eq!(comultiply_divided(&d1, 1, 0).unwrap().matrix, SparseMatrix::identity(1));
        let d2 = BasisSpace::divided(2, &v);
        assert_eq!(comultiply_divided(&d2, 1, 1).unwrap().matrix, SparseMatrix::identity(1));
    }

    #[test]
    fn divided_and_sym_are_dual() {
        // comultiplication on D^2 is the transpose of multiplication on Sym^2
        // of the dual, and vice versa, under the monomial pairing
        let v = BasisSpace::free(2);
        let vd = BasisSpace::dual(&v);
        let g = divided_sym_pairing(2, &v);
        assert_eq!(g, SparseMatrix::identity(3));
        let dd = comultiply_divided(&BasisSpace::divided(2, &v), 1, 1).unwrap();
        let ms = multiply_sym(1, 1, &vd);
        assert_eq!(dd.matrix.transpose(), ms.matrix);
        let ds = comultiply_sym(&BasisSpace::sym(2, &vd), 1, 1).unwrap();
        let md = multiply_divided(1, 1, &v);
        assert_eq!(ds.matrix.transpose(), md.matrix);
    }

    #[test]
    fn wedge_power_examples() {
        let f = LinearMap::identity(&BasisSpace::free(2));
        assert_eq!(wedge_power_of_map(&f, 2).matrix, SparseMatrix::identity(1));
        let g = LinearMap::new(
            BasisSpace::free(3),
            BasisSpace::free(2),
            SparseMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]),
        )
        .unwrap();
        assert_eq!(wedge_power_of_map(&g, 1).matrix, g.matrix);
        let w = wedge_power_of_map(&g, 2);
        assert_eq!(w.matrix, SparseMatrix::from_i64(&[vec![-3, -6, -3]]));
    }

    #[test]
    fn subspace_inclusions() {
        let amb = BasisSpace::wedge(2, &BasisSpace::free(2));
        let full = BasisSpace::subspace(&amb, SparseMatrix::identity(1)).unwrap();
        assert_eq!(induced_wedge_inclusion(&full, 1).unwrap().matrix, SparseMatrix::identity(1));
        let bad = BasisSpace::subspace(&BasisSpace::free(3), SparseMatrix::from_i64(&[vec![1, 2], vec![1, 2], vec![0, 0]]));
        assert!(matches!(bad, Err(Error::RankDeficient { rank: 1, cols: 2 })));
    }

    fn coassoc_wedge(k: usize, n: usize) -> bool {
        let v = BasisSpace::free(n);
        let w = BasisSpace::wedge(k, &v);
        for p in 0..=k {
            for q in 0..=k - p {
                let r = k - p - q;
                let d1 = comultiply_wedge(&w, p + q, r).unwrap();
                let d_pq = comultiply_wedge(&BasisSpace::wedge(p + q, &v), p, q).unwrap();
                let left = &d_pq.matrix.kron(&SparseMatrix::identity(BasisSpace::wedge(r, &v).dim())) * &d1.matrix;
                let d2 = comultiply_wedge(&w, p, q + r).unwrap();
                let d_qr = comultiply_wedge(&BasisSpace::wedge(q + r, &v), q, r).unwrap();
                let right = &SparseMatrix::identity(BasisSpace::wedge(p, &v).dim()).kron(&d_qr.matrix) * &d2.matrix;
                if left != right {
                    return false;
                }
            }
        }
        true
    }

    fn coassoc_divided(k: usize, n: usize) -> bool {
        let v = BasisSpace::free(n);
        let w = BasisSpace::divided(k, &v);
        for p in 0..=k {
            for q in 0..=k - p {
                let r = k - p - q;
                let d1 = comultiply_divided(&w, p + q, r).unwrap();
                let d_pq = comultiply_divided(&BasisSpace::divided(p + q, &v), p, q).unwrap();
                let left = &d_pq.matrix.kron(&SparseMatrix::identity(BasisSpace::divided(r, &v).dim())) * &d1.matrix;
                let d2 = comultiply_divided(&w, p, q + r).unwrap();
                let d_qr = comultiply_divided(&BasisSpace::divided(q + r, &v), q, r).unwrap();
                let right = &SparseMatrix::identity(BasisSpace::divided(p, &v).dim()).kron(&d_qr.matrix) * &d2.matrix;
                if left != right {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn coassociativity() {
        for k in 0..=4 {
            for n in 1..=6 {
                if k <= n {
                    assert!(coassoc_wedge(k, n), "wedge k={k} n={n}");
                }
                if n <= 4 {
                    assert!(coassoc_divided(k, n), "divided k={k} n={n}");
                }
            }
        }
    }

    fn rational_matrix(r: usize, c: usize) -> impl Strategy<Value = SparseMatrix> {
        proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            SparseMatrix::from_i64(&v.chunks(c).map(|ch| ch.to_vec()).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn wedge_power_is_functorial(a in rational_matrix(3, 4), b in rational_matrix(4, 3), k in 0usize..4) {
            let (u, v, w) = (BasisSpace::free(3), BasisSpace::free(4), BasisSpace::free(3));
            let f = LinearMap::new(v.clone(), u, a).unwrap();
            let g = LinearMap::new(w, v, b).unwrap();
            let fg = f.compose(&g).unwrap();
            let lhs = wedge_power_of_map(&fg, k);
            let rhs = wedge_power_of_map(&f, k).compose(&wedge_power_of_map(&g, k)).unwrap();
            prop_assert_eq!(lhs.matrix, rhs.matrix);
        }

        #[test]
        fn sym_power_is_functorial(a in rational_matrix(2, 3), b in rational_matrix(3, 2), k in 0usize..4) {
            let f = LinearMap::new(BasisSpace::free(3), BasisSpace::free(2), a).unwrap();
            let g = LinearMap::new(BasisSpace::free(2), BasisSpace::free(3), b).unwrap();
            let lhs = sym_power_of_map(&f.compose(&g).unwrap(), k);
            let rhs = sym_power_of_map(&f, k).compose(&sym_power_of_map(&g, k)).unwrap();
            prop_assert_eq!(lhs.matrix, rhs.matrix);
        }

        #[test]
        fn inclusion_commutes_with_comultiplication(a in rational_matrix(6, 3), p in 0usize..3, q in 0usize..2) {
            prop_assume!(a.rank() == 3 && p + q <= 3);
            let amb = BasisSpace::free(6);
            let sub = BasisSpace::subspace(&amb, a).unwrap();
            let k = p + q;
            let inc_k = induced_wedge_inclusion(&sub, k).unwrap();
            let inc_p = induced_wedge_inclusion(&sub, p).unwrap();
            let inc_q = induced_wedge_inclusion(&sub, q).unwrap();
            let d_sub = comultiply_wedge(&BasisSpace::wedge(k, &sub), p, q).unwrap();
            let d_amb = comultiply_wedge(&BasisSpace::wedge(k, &amb), p, q).unwrap();
            let lhs = &d_amb.matrix * &inc_k.matrix;
            let rhs = &inc_p.matrix.kron(&inc_q.matrix) * &d_sub.matrix;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
