//! Partitions, weights and the `SL_2` constructions: hook-content
//! dimensions, Pieri rules, Bott's algorithm, weight tables with
//! highest-weight peeling, Macdonald's hook condition and the
//! Clebsch-Gordan embedding `Sym^{2b-2} U ⊂ ∧^2 Sym^b U`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::basis::{BasisSpace, SpaceKind};
use crate::combin::wedge_merge;
use crate::error::{Error, Result};
use crate::linalg::{int, Rational, SparseMatrix};

/// A weakly decreasing tuple of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// `(a, 1^k)`, the hook shape.
    pub fn hook(a: usize, k: usize) -> Self {
        let mut p = vec![a];
        p.extend(std::iter::repeat(1).take(k));
        Partition::new(p).unwrap_or_else(|_| Partition(Vec::new()))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition((0..n).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// All partitions of `n` with at most `rows` parts, in reverse
    /// lexicographic order.
    pub fn all(n: usize, rows: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions_rec(n, n, rows, &mut cur, &mut out);
        out
    }
}

fn partitions_rec(n: usize, max: usize, rows: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if rows == 0 {
        return;
    }
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        partitions_rec(n - p, p, rows - 1, cur, out);
        cur.pop();
    }
}

/// `dim S_λ(Q^n)` by the hook-content formula; 0 when `λ` has more than `n` rows.
pub fn schur_dim(lambda: &Partition, n: usize) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            num *= BigInt::from(n as i64 + j as i64 - i as i64);
            den *= BigInt::from((row - j) + (conj.part(j) - i) - 1);
        }
    }
    (num / den).to_u64().expect("dimension fits in u64")
}

/// Shapes obtained from `λ` by adding one box.
pub fn pieri_tensor_v(lambda: &Partition) -> Vec<Partition> {
    let p = lambda.parts();
    (0..=p.len())
        .filter(|&i| i == 0 || lambda.part(i - 1) > lambda.part(i))
        .map(|i| {
            let mut q = p.to_vec();
            if i == q.len() {
                q.push(1);
            } else {
                q[i] += 1;
            }
            Partition(q)
        })
        .collect()
}

/// Shapes obtained from `λ` by removing `j` boxes, no two from the same column.
pub fn pieri_remove_sym_dual(lambda: &Partition, j: usize) -> Vec<Partition> {
    let p = lambda.parts();
    let mut out = Vec::new();
    let mut cur = vec![0usize; p.len()];
    remove_rec(p, 0, j, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

fn remove_rec(p: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if i == p.len() {
        if left == 0 {
            out.push(Partition::new(cur.clone()).expect("horizontal strips keep shapes"));
        }
        return;
    }
    let below = p.get(i + 1).copied().unwrap_or(0);
    for r in 0..=(p[i] - below).min(left) {
        cur[i] = p[i] - r;
        remove_rec(p, i + 1, left - r, cur, out);
    }
}

/// Bott's algorithm: add `ρ = (n-1, ..., 0)`, return `None` on a repeated entry,
/// otherwise the number of transpositions needed to sort decreasingly and the
/// sorted tuple minus `ρ`.
pub fn bott_algorithm(w: &[i64]) -> Option<(usize, Vec<i64>)> {
    let n = w.len();
    let mut v: Vec<i64> = w.iter().enumerate().map(|(i, x)| x + (n - 1 - i) as i64).collect();
    let mut swaps = 0;
    for i in 0..n {
        for j in 0..n - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] < v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((swaps, v.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as i64).collect()))
}

/// Weight multiplicities.
pub type WeightTable = BTreeMap<Vec<i64>, usize>;

/// GL_n torus weights of `Q^n`: `e_k` has weight `ε_k`.
pub fn gl_weights(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|k| (0..n).map(|i| i64::from(i == k)).collect()).collect()
}

/// SL_2 weights of `Sym^n U` in the basis `x^n, x^{n-1}, ..., 1`.
pub fn sl2_weights(n: usize) -> Vec<Vec<i64>> {
    (0..=n).map(|k| vec![n as i64 - 2 * k as i64]).collect()
}

/// Weight of every basis vector of `space`, given the weights of the free
/// spaces it is built from. Subspaces must be spanned by weight vectors.
pub fn basis_weights(space: &BasisSpace, base: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let rank = base.first().map_or(0, Vec::len);
    let sum = |ws: &[Vec<i64>], idx: &mut dyn Iterator<Item = usize>| -> Vec<i64> {
        let mut acc = vec![0i64; rank];
        for i in idx {
            for (a, b) in acc.iter_mut().zip(&ws[i]) {
                *a += b;
            }
        }
        acc
    };
    Ok(match space.kind() {
        SpaceKind::Free { dim, .. } => {
            if *dim != base.len() {
                return Err(Error::DimensionMismatch(format!("{} base weights for {}", base.len(), space.describe())));
            }
            base.to_vec()
        }
        SpaceKind::Sym { inner, .. } | SpaceKind::Wedge { inner, .. } | SpaceKind::Divided { inner, .. } => {
            let ws = basis_weights(inner, base)?;
            space.labels().iter().map(|l| sum(&ws, &mut l.iter().copied())).collect()
        }
        SpaceKind::Tensor(fs) => {
            let parts: Vec<Vec<Vec<i64>>> = fs.iter().map(|f| basis_weights(f, base)).collect::<Result<_>>()?;
            space
                .labels()
                .iter()
                .map(|l| {
                    let mut acc = vec![0i64; rank];
                    for (p, &i) in parts.iter().zip(l) {
                        for (a, b) in acc.iter_mut().zip(&p[i]) {
                            *a += b;
                        }
                    }
                    acc
                })
                .collect()
        }
        SpaceKind::Dual(inner) => {
            basis_weights(inner, base)?.into_iter().map(|w| w.into_iter().map(|x| -x).collect()).collect()
        }
        SpaceKind::Subspace { ambient, span } => {
            let ws = basis_weights(ambient, base)?;
            let mut out = Vec::new();
            for c in 0..span.cols() {
                let col = span.column(c);
                let w = &ws[col[0].0];
                if col.iter().any(|(r, _)| &ws[*r] != w) {
                    return Err(Error::Precondition(format!("column {c} of the span is not a weight vector")));
                }
                out.push(w.clone());
            }
            out
        }
    })
}

pub fn weight_table(space: &BasisSpace, base: &[Vec<i64>]) -> Result<WeightTable> {
    let mut t = WeightTable::new();
    for w in basis_weights(space, base)? {
        *t.entry(w).or_insert(0) += 1;
    }
    Ok(t)
}

/// Number of semistandard tableaux of shape `λ` and content `α`.
pub fn kostka(lambda: &Partition, alpha: &[usize]) -> u64 {
    let mut memo = HashMap::new();
    kostka_rec(lambda.parts(), alpha, &mut memo)
}

fn kostka_rec(shape: &[usize], alpha: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
    let size: usize = shape.iter().sum();
    if alpha.iter().sum::<usize>() != size {
        return 0;
    }
    if alpha.is_empty() {
        return u64::from(size == 0);
    }
    let key = (shape.to_vec(), alpha.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let last = alpha[alpha.len() - 1];
    let lam = Partition(shape.to_vec());
    let total = pieri_remove_sym_dual(&lam, last)
        .iter()
        .map(|mu| kostka_rec(mu.parts(), &alpha[..alpha.len() - 1], memo))
        .sum();
    memo.insert(key, total);
    total
}

/// Weight table of the irreducible GL_n representation with highest weight
/// `mu` (weakly decreasing, entries of any sign).
pub fn gl_character(mu: &[i64]) -> WeightTable {
    let n = mu.len();
    let shift = mu.iter().copied().min().unwrap_or(0).min(0);
    let lam = Partition(mu.iter().map(|x| (x - shift) as usize).filter(|&x| x > 0).collect());
    let mut out = WeightTable::new();
    for alpha in compositions(lam.size(), n) {
        let k = kostka(&lam, &alpha);
        if k > 0 {
            out.insert(alpha.iter().map(|&a| a as i64 + shift).collect(), k as usize);
        }
    }
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Irreducible GL_n constituents of a weight table, by repeatedly peeling off
/// the character of the lexicographically largest remaining weight.
pub fn irreducible_multiplicities(table: &WeightTable) -> Result<BTreeMap<Vec<i64>, usize>> {
    peel(table, gl_character)
}

/// Irreducible SL_2 constituents of a table of one-entry weights.
pub fn sl2_multiplicities(table: &WeightTable) -> Result<BTreeMap<Vec<i64>, usize>> {
    peel(table, |m| {
        let top = m[0];
        (0..=top).map(|k| (vec![top - 2 * k], 1)).collect()
    })
}

fn peel(table: &WeightTable, character: impl Fn(&[i64]) -> WeightTable) -> Result<BTreeMap<Vec<i64>, usize>> {
    let mut rest: BTreeMap<Vec<i64>, i64> = table.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some((top, &mult)) = rest.iter().next_back() {
        let top = top.clone();
        if top.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Internal(format!("largest remaining weight {top:?} is not dominant")));
        }
        for (w, m) in character(&top) {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= mult * m as i64;
            if *e < 0 {
                return Err(Error::Internal(format!("negative multiplicity at weight {w:?}")));
            }
            if *e == 0 {
                rest.remove(&w);
            }
        }
        out.insert(top, mult as usize);
    }
    Ok(out)
}

/// Partitions of `2n` with at most `dim` rows whose diagonal hooks all have
/// one more box in the column than in the row. These index the constituents of
/// `∧^n(∧^2 Q^dim)`, each with multiplicity one.
pub fn macdonald_factors(n: usize, dim: usize) -> Vec<Partition> {
    Partition::all(2 * n, dim)
        .into_iter()
        .filter(|p| {
            let c = p.conjugate();
            (0..p.len()).take_while(|&i| p.part(i) > i).all(|i| c.part(i) - i == p.part(i) - i + 1)
        })
        .collect()
}

/// The lowering operator on `Sym^n U`: `x^{n-k} ↦ (n-k) x^{n-k-1}`.
pub fn sl2_lowering(n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(n + 1, n + 1, (0..n).map(|k| (k + 1, k, int((n - k) as i64))))
}

/// The raising operator on `Sym^n U`: `x^{n-k} ↦ k x^{n-k+1}`.
pub fn sl2_raising(n: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(n + 1, n + 1, (1..=n).map(|k| (k - 1, k, int(k as i64))))
}

/// An operator on `V` extended to `∧^2 V` as a derivation.
pub fn wedge2_derivation(op: &SparseMatrix) -> SparseMatrix {
    let v = BasisSpace::free(op.cols());
    let w2 = BasisSpace::wedge(2, &v);
    let mut trip = Vec::new();
    for (c, l) in w2.labels().iter().enumerate() {
        for (slot, other) in [(l[0], l[1]), (l[1], l[0])] {
            for (r, x) in op.column(slot) {
                let pair = if slot == l[0] { [r, other] } else { [other, r] };
                if let Some((sign, merged)) = wedge_merge(&pair[..1], &pair[1..]) {
                    trip.push((w2.idx(&merged), c, x * int(sign)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(w2.dim(), w2.dim(), trip)
}

/// `V_0 = Sym^b U` with basis named `x^b, ..., 1`, as a free space.
pub fn sl2_space(b: usize) -> BasisSpace {
    let names = (0..=b)
        .map(|k| match b - k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            e => format!("x^{e}"),
        })
        .collect();
    BasisSpace::free_named(names)
}

/// `V_1 = Sym^{2b-2} U ⊂ ∧^2 Sym^b U`, spanned by `v_0 = e_0 ∧ e_1` and
/// `v_{k+1} = F v_k / (2b - 2 - k)`.
pub fn clebsch_gordan_v1(b: usize) -> Result<BasisSpace> {
    if b == 0 {
        return Err(Error::InvalidInput("b must be at least 1".into()));
    }
    let v0 = sl2_space(b);
    let w2 = BasisSpace::wedge(2, &v0);
    let lower = wedge2_derivation(&sl2_lowering(b));
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![vec![(0, Rational::one())]];
    for k in 0..2 * b - 2 {
        let next = lower.mul_vec(&cols[k]);
        let scale = Rational::one() / int((2 * b - 2 - k) as i64);
        cols.push(next.into_iter().map(|(r, x)| (r, x * &scale)).collect());
    }
    BasisSpace::subspace(&w2, SparseMatrix::from_columns(w2.dim(), &cols))
}

/// `true` when `op` maps the span of the subspace into itself.
pub fn preserves_subspace(op: &SparseMatrix, sub: &BasisSpace) -> Result<bool> {
    let span = match sub.kind() {
        SpaceKind::Subspace { span, .. } => span,
        _ => return Err(Error::WrongSpace(format!("{} is not a subspace", sub.describe()))),
    };
    let image = op.try_mul(span)?;
    Ok(span.solve_in_column_space(&image)?.is_some())
}

/// `φ` restricted to `V_1 = Sym^{2b-2} U`: the `(b+1) × (2b-1)` matrix of
/// linear forms `Sym^{2b-2} U ⊗ S(-1) → Sym^b U ⊗ S`.
pub fn sl2_phi_restriction(b: usize) -> Result<crate::complex::PolyMap> {
    crate::duality::koszul_phi(&clebsch_gordan_v1(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rational::binomial};
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_content_dimensions() {
        assert_eq!(schur_dim(&p(&[1]), 4), 4);
        assert_eq!(schur_dim(&p(&[2, 1]), 4), 20);
        assert_eq!(schur_dim(&p(&[3, 1, 1, 1]), 4), 10);
        assert_eq!(schur_dim(&p(&[1, 1, 1, 1, 1]), 4), 0);
        for n in 1..7 {
            for k in 0..5 {
                assert_eq!(schur_dim(&p(&[k]), n), binomial((n + k - 1) as i64, k as i64));
                assert_eq!(schur_dim(&Partition::new(vec![1; k]).unwrap(), n), binomial(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_tensor_v(&p(&[])), vec![p(&[1])]);
        let mut got = pieri_tensor_v(&p(&[2, 1]));
        got.sort();
        assert_eq!(got, vec![p(&[2, 1, 1]), p(&[2, 2]), p(&[3, 1])]);
        assert_eq!(pieri_remove_sym_dual(&p(&[2, 1]), 0), vec![p(&[2, 1])]);
        assert_eq!(pieri_remove_sym_dual(&p(&[2, 1]), 1), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(pieri_remove_sym_dual(&p(&[2, 2]), 2), vec![p(&[2])]);
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_algorithm(&[-4, 1, 0, 0]), Some((3, vec![0, -1, -1, -1])));
        assert_eq!(bott_algorithm(&[-3, 2, 0, 0]), None);
        assert_eq!(bott_algorithm(&[3, 1, 0]), Some((0, vec![3, 1, 0])));
    }

    #[test]
    fn weight_tables_and_peeling() {
        let v = BasisSpace::free(2);
        let t = weight_table(&BasisSpace::sym(2, &v), &gl_weights(2)).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.values().all(|&m| m == 1));
        let v4 = BasisSpace::free(4);
        let w = BasisSpace::wedge(2, &BasisSpace::wedge(2, &v4));
        let m = irreducible_multiplicities(&weight_table(&w, &gl_weights(4)).unwrap()).unwrap();
        assert_eq!(m, BTreeMap::from([(vec![2, 1, 1, 0], 1)]));
        let dual = BasisSpace::dual(&v4);
        let m = irreducible_multiplicities(&weight_table(&dual, &gl_weights(4)).unwrap()).unwrap();
        assert_eq!(m, BTreeMap::from([(vec![0, 0, 0, -1], 1)]));
    }

    #[test]
    fn macdonald_small_cases() {
        assert_eq!(macdonald_factors(1, 4), vec![p(&[1, 1])]);
        assert_eq!(macdonald_factors(2, 3), vec![p(&[2, 1, 1])]);
        for dim in [4usize, 5] {
            for n in 0..=4 {
                let total: u64 = macdonald_factors(n, dim).iter().map(|l| schur_dim(l, dim)).sum();
                assert_eq!(total, binomial((dim * (dim - 1) / 2) as i64, n as i64));
            }
        }
    }

    #[test]
    fn clebsch_gordan_b3() {
        let v1 = clebsch_gordan_v1(3).unwrap();
        assert_eq!(v1.dim(), 5);
        let span = match v1.kind() {
            SpaceKind::Subspace { span, .. } => span.clone(),
            _ => unreachable!(),
        };
        assert_eq!(span.get(2, 2), rat(1, 6));
        assert_eq!(span.get(3, 2), rat(1, 2));
        assert!(preserves_subspace(&wedge2_derivation(&sl2_lowering(3)), &v1).unwrap());
        assert!(preserves_subspace(&wedge2_derivation(&sl2_raising(3)), &v1).unwrap());
        let t = weight_table(&v1, &sl2_weights(3)).unwrap();
        assert_eq!(t.keys().map(|w| w[0]).collect::<Vec<_>>(), vec![-4, -2, 0, 2, 4]);
        assert_eq!(clebsch_gordan_v1(2).unwrap().dim(), 3);
        assert_eq!(clebsch_gordan_v1(1).unwrap().dim(), 1);
    }

    proptest! {
        #[test]
        fn bott_fixes_dominant_weights(mut w in proptest::collection::vec(-5i64..5, 1..6)) {
            w.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(bott_algorithm(&w), Some((0, w.clone())));
        }

        #[test]
        fn pieri_agrees_with_characters(parts in proptest::collection::vec(1usize..4, 0..4), n in 1usize..5) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            prop_assume!(lam.len() <= n);
            let mu: Vec<i64> = (0..n).map(|i| lam.part(i) as i64).collect();
            let mut product = WeightTable::new();
            for (w, m) in gl_character(&mu) {
                for e in gl_weights(n) {
                    let s: Vec<i64> = w.iter().zip(&e).map(|(a, b)| a + b).collect();
                    *product.entry(s).or_insert(0) += m;
                }
            }
            let got = irreducible_multiplicities(&product).unwrap();
            let want: BTreeMap<Vec<i64>, usize> = pieri_tensor_v(&lam)
                .into_iter()
                .filter(|q| q.len() <= n)
                .map(|q| ((0..n).map(|i| q.part(i) as i64).collect(), 1))
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
