//! Graded free modules over a polynomial ring, maps between them with
//! homogeneous polynomial entries, finite complexes and chain maps.
//!
//! A summand `(V, t)` of a graded free module stands for `V ⊗ S(-t)`: its
//! generators sit in internal degree `t`. An entry of a map from a generator
//! of degree `t` to one of degree `t'` is homogeneous of degree `t - t'`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{BasisSpace, LinearMap, SpaceKind};
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseMatrix};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, PartialEq, Eq)]
pub struct GradedFreeModule {
    summands: Vec<(BasisSpace, i64)>,
}

impl fmt::Debug for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.summands.iter().map(|(s, t)| format!("{}(-{t})", s.describe())).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

impl GradedFreeModule {
    pub fn new(summands: Vec<(BasisSpace, i64)>) -> Self {
        GradedFreeModule { summands }
    }

    pub fn single(space: BasisSpace, twist: i64) -> Self {
        GradedFreeModule { summands: vec![(space, twist)] }
    }

    pub fn zero() -> Self {
        GradedFreeModule { summands: Vec::new() }
    }

    pub fn summands(&self) -> &[(BasisSpace, i64)] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|(s, _)| s.dim()).sum()
    }

    /// Twist of every generator, in order.
    pub fn generator_twists(&self) -> Vec<i64> {
        self.summands.iter().flat_map(|(s, t)| std::iter::repeat(*t).take(s.dim())).collect()
    }

    /// Offset of the generators of summand `k`.
    pub fn offset(&self, k: usize) -> usize {
        self.summands[..k].iter().map(|(s, _)| s.dim()).sum()
    }

    pub fn piece_dim(&self, ring: PolyRing, d: i64) -> usize {
        self.summands.iter().map(|(s, t)| s.dim() * ring.graded_dim(d - t)).sum()
    }

    pub fn twisted(&self, shift: i64) -> Self {
        GradedFreeModule { summands: self.summands.iter().map(|(s, t)| (s.clone(), t + shift)).collect() }
    }

    pub fn dual(&self) -> Self {
        GradedFreeModule { summands: self.summands.iter().map(|(s, t)| (dual_space(s), -t)).collect() }
    }

    /// The single space of a one-summand module.
    pub fn space(&self) -> Option<&BasisSpace> {
        match self.summands.as_slice() {
            [(s, _)] => Some(s),
            _ => None,
        }
    }

    pub fn twist(&self) -> Option<i64> {
        let mut it = self.summands.iter().map(|(_, t)| *t);
        let t = it.next()?;
        it.all(|x| x == t).then_some(t)
    }
}

/// `V*`, with `(V*)* = V` on the nose.
pub fn dual_space(s: &BasisSpace) -> BasisSpace {
    match s.kind() {
        SpaceKind::Dual(inner) => inner.clone(),
        _ => BasisSpace::dual(s),
    }
}

/// A map of graded free modules, stored by columns (one per source generator).
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub ring: PolyRing,
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    cols: Vec<Vec<(usize, Poly)>>,
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMap {:?} -> {:?}", self.source, self.target)?;
        for (c, col) in self.cols.iter().enumerate() {
            for (r, p) in col {
                writeln!(f, "  ({r}, {c}): {p:?}")?;
            }
        }
        Ok(())
    }
}

impl PolyMap {
    pub fn zero(ring: PolyRing, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let n = source.rank();
        PolyMap { ring, source, target, cols: vec![Vec::new(); n] }
    }

    /// Builds a map from `(row, col, entry)` triplets, summing duplicates and
    /// checking homogeneity against the twists.
    pub fn from_entries<I>(ring: PolyRing, source: GradedFreeModule, target: GradedFreeModule, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Poly)>,
    {
        let (nr, nc) = (target.rank(), source.rank());
        let mut acc: Vec<BTreeMap<usize, Poly>> = vec![BTreeMap::new(); nc];
        for (r, c, p) in entries {
            if r >= nr || c >= nc {
                return Err(Error::DimensionMismatch(format!("entry ({r}, {c}) outside {nr}x{nc}")));
            }
            if p.is_zero() {
                continue;
            }
            let e = acc[c].entry(r).or_insert_with(|| Poly::zero(ring.num_vars));
            *e = &*e + &p;
        }
        let cols = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        let map = PolyMap { ring, source, target, cols };
        map.check_homogeneous()?;
        Ok(map)
    }

    /// A map with constant entries between modules whose twists agree entrywise
    /// wherever the matrix is nonzero.
    pub fn from_constant(ring: PolyRing, source: GradedFreeModule, target: GradedFreeModule, m: &SparseMatrix) -> Result<Self> {
        if m.shape() != (target.rank(), source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "constant matrix {:?} for ranks {} -> {}",
                m.shape(),
                source.rank(),
                target.rank()
            )));
        }
        let entries: Vec<(usize, usize, Poly)> =
            m.entries().map(|(r, c, v)| (r, c, Poly::constant(ring.num_vars, v.clone()))).collect();
        Self::from_entries(ring, source, target, entries)
    }

    fn check_homogeneous(&self) -> Result<()> {
        let st = self.source.generator_twists();
        let tt = self.target.generator_twists();
        for (c, col) in self.cols.iter().enumerate() {
            for (r, p) in col {
                let d = st[c] - tt[*r];
                if !p.is_homogeneous_of(d) {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({r}, {c}) = {p:?} should have degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.target.rank(), self.source.rank())
    }

    pub fn column(&self, c: usize) -> &[(usize, Poly)] {
        &self.cols[c]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, c, p)))
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        self.cols[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| Poly::zero(self.ring.num_vars))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// First nonzero entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Poly)> {
        self.entries().next()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PolyMap) -> Result<PolyMap> {
        if other.target.rank() != self.source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {:?} after {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let n = self.ring.num_vars;
        let cols: Vec<Vec<(usize, Poly)>> = other
            .cols
            .par_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
                for (k, p) in col {
                    for (r, q) in &self.cols[*k] {
                        let e = acc.entry(*r).or_insert_with(|| Poly::zero(n));
                        *e = &*e + &(q * p);
                    }
                }
                acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
            })
            .collect();
        Ok(PolyMap { ring: self.ring, source: other.source.clone(), target: self.target.clone(), cols })
    }

    pub fn add(&self, other: &PolyMap) -> Result<PolyMap> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("cannot add {:?} and {:?}", self.shape(), other.shape())));
        }
        let entries: Vec<(usize, usize, Poly)> =
            self.entries().chain(other.entries()).map(|(r, c, p)| (r, c, p.clone())).collect();
        Self::from_entries(self.ring, self.source.clone(), self.target.clone(), entries)
    }

    pub fn sub(&self, other: &PolyMap) -> Result<PolyMap> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Rational) -> PolyMap {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, p)| (*r, p.scale(s))).filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        PolyMap { ring: self.ring, source: self.source.clone(), target: self.target.clone(), cols }
    }

    /// `r` with `self = r * other`, when `other` is nonzero and such an `r` exists.
    pub fn scalar_ratio(&self, other: &PolyMap) -> Option<Rational> {
        if self.shape() != other.shape() {
            return None;
        }
        let (r0, c0, p0) = other.first_nonzero()?;
        let q = self.entry(r0, c0);
        let (e, c) = p0.terms().next()?;
        let r = q.coefficient(e) / c;
        let diff = self.sub(&other.scale(&r)).ok()?;
        diff.is_zero().then_some(r)
    }

    /// The transpose, between dual modules.
    pub fn dual(&self) -> PolyMap {
        let mut cols: Vec<Vec<(usize, Poly)>> = vec![Vec::new(); self.target.rank()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, p) in col {
                cols[*r].push((c, p.clone()));
            }
        }
        PolyMap { ring: self.ring, source: self.target.dual(), target: self.source.dual(), cols }
    }

    pub fn with_modules(&self, source: GradedFreeModule, target: GradedFreeModule) -> Result<PolyMap> {
        let entries: Vec<(usize, usize, Poly)> = self.entries().map(|(r, c, p)| (r, c, p.clone())).collect();
        Self::from_entries(self.ring, source, target, entries)
    }

    /// The constant matrix of a map all of whose entries are constants.
    pub fn constant_matrix(&self) -> Result<SparseMatrix> {
        let zero_exp = vec![0; self.ring.num_vars];
        let mut trip = Vec::new();
        for (r, c, p) in self.entries() {
            if p.homogeneous_degree() != Some(0) {
                return Err(Error::Inhomogeneous(format!("entry ({r}, {c}) = {p:?} is not constant")));
            }
            trip.push((r, c, p.coefficient(&zero_exp)));
        }
        Ok(SparseMatrix::from_triplets(self.target.rank(), self.source.rank(), trip))
    }

    /// Coefficient matrix of the monomial `exps` in every entry.
    pub fn coefficient_matrix(&self, exps: &[usize]) -> SparseMatrix {
        let trip = self.entries().map(|(r, c, p)| (r, c, p.coefficient(exps)));
        SparseMatrix::from_triplets(self.target.rank(), self.source.rank(), trip)
    }

    pub fn evaluate(&self, point: &[Rational]) -> SparseMatrix {
        let trip = self.entries().map(|(r, c, p)| (r, c, p.evaluate(point)));
        SparseMatrix::from_triplets(self.target.rank(), self.source.rank(), trip)
    }

    /// The matrix of the map between degree-`d` pieces. The basis of a piece
    /// lists summands in order, and within a summand the pairs
    /// (generator, monomial) row-major.
    pub fn realize_matrix(&self, d: i64) -> SparseMatrix {
        let ring = self.ring;
        let src_off = piece_offsets(&self.source, ring, d);
        let tgt_off = piece_offsets(&self.target, ring, d);
        let st = self.source.generator_twists();
        let tt = self.target.generator_twists();
        let src_summand = summand_of(&self.source);
        let tgt_summand = summand_of(&self.target);
        let mut mono_cache: BTreeMap<i64, (Vec<Vec<usize>>, std::collections::HashMap<Vec<usize>, usize>)> = BTreeMap::new();
        let mut get = |k: i64| -> (Vec<Vec<usize>>, std::collections::HashMap<Vec<usize>, usize>) {
            mono_cache
                .entry(k)
                .or_insert_with(|| {
                    if k < 0 {
                        (Vec::new(), Default::default())
                    } else {
                        (ring.monomials(k as usize), ring.monomial_index(k as usize))
                    }
                })
                .clone()
        };
        let mut trip: Vec<(usize, usize, Rational)> = Vec::new();
        for (c, col) in self.cols.iter().enumerate() {
            let ks = d - st[c];
            if ks < 0 || col.is_empty() {
                continue;
            }
            let (src_monos, _) = get(ks);
            let (sk, sl) = src_summand[c];
            let src_base = src_off[sk] + sl * src_monos.len();
            for (r, p) in col {
                let kt = d - tt[*r];
                let (_, tgt_index) = get(kt);
                let (tk, tl) = tgt_summand[*r];
                let tgt_base = tgt_off[tk] + tl * ring.graded_dim(kt);
                for (mi, m) in src_monos.iter().enumerate() {
                    for (e, coeff) in p.terms() {
                        let prod: Vec<usize> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                        trip.push((tgt_base + tgt_index[&prod], src_base + mi, coeff.clone()));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(self.target.piece_dim(ring, d), self.source.piece_dim(ring, d), trip)
    }

    pub fn realize_degree(&self, d: i64) -> LinearMap {
        let m = self.realize_matrix(d);
        LinearMap {
            source: BasisSpace::free(m.cols()),
            target: BasisSpace::free(m.rows()),
            matrix: m,
        }
    }
}

fn piece_offsets(m: &GradedFreeModule, ring: PolyRing, d: i64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.summands().len());
    let mut acc = 0;
    for (s, t) in m.summands() {
        out.push(acc);
        acc += s.dim() * ring.graded_dim(d - t);
    }
    out
}

fn summand_of(m: &GradedFreeModule) -> Vec<(usize, usize)> {
    m.summands()
        .iter()
        .enumerate()
        .flat_map(|(k, (s, _))| (0..s.dim()).map(move |l| (k, l)))
        .collect()
}

/// Location of a failed identity: a nonzero entry of a composite that should
/// vanish, or of a difference that should be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub position: i64,
    pub row: usize,
    pub col: usize,
    pub entry: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "position {}: entry ({}, {}) = {}", self.position, self.row, self.col, self.entry)
    }
}

pub type Verdict = std::result::Result<(), Witness>;

/// A bounded complex: `terms[k]` sits in homological position `offset + k` and
/// `diffs[k]` maps `terms[k + 1]` to `terms[k]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedComplex {
    pub ring: PolyRing,
    pub offset: i64,
    pub terms: Vec<GradedFreeModule>,
    pub diffs: Vec<PolyMap>,
}

impl fmt::Debug for GradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedComplex (offset {})", self.offset)?;
        for (k, t) in self.terms.iter().enumerate() {
            writeln!(f, "  [{}] {:?}", self.offset + k as i64, t)?;
        }
        Ok(())
    }
}

impl GradedComplex {
    pub fn new(ring: PolyRing, offset: i64, terms: Vec<GradedFreeModule>, diffs: Vec<PolyMap>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source.rank() != terms[k + 1].rank() || d.target.rank() != terms[k].rank() {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of position {} has shape {:?}",
                    offset + k as i64 + 1,
                    d.shape()
                )));
            }
        }
        Ok(GradedComplex { ring, offset, terms, diffs })
    }

    pub fn min_position(&self) -> i64 {
        self.offset
    }

    pub fn max_position(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<i64> {
        self.min_position()..=self.max_position()
    }

    pub fn term(&self, pos: i64) -> GradedFreeModule {
        if pos < self.min_position() || pos > self.max_position() {
            return GradedFreeModule::zero();
        }
        self.terms[(pos - self.offset) as usize].clone()
    }

    /// The differential out of position `pos`.
    pub fn diff(&self, pos: i64) -> PolyMap {
        if pos <= self.min_position() || pos > self.max_position() {
            return PolyMap::zero(self.ring, self.term(pos), self.term(pos - 1));
        }
        self.diffs[(pos - self.offset - 1) as usize].clone()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(GradedFreeModule::rank).collect()
    }

    pub fn twisted(&self, shift: i64) -> GradedComplex {
        let terms: Vec<GradedFreeModule> = self.terms.iter().map(|t| t.twisted(shift)).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| d.with_modules(terms[k + 1].clone(), terms[k].clone()).expect("twisting preserves degrees"))
            .collect();
        GradedComplex { ring: self.ring, offset: self.offset, terms, diffs }
    }

    pub fn shifted(&self, positions: i64) -> GradedComplex {
        GradedComplex { offset: self.offset + positions, ..self.clone() }
    }

    /// Checks that every consecutive composite vanishes.
    pub fn verify(&self) -> Verdict {
        for k in 1..self.diffs.len() {
            let comp = self.diffs[k - 1].compose(&self.diffs[k]).expect("shapes checked at construction");
            if let Some((r, c, p)) = comp.first_nonzero() {
                return Err(Witness { position: self.offset + k as i64 + 1, row: r, col: c, entry: format!("{p:?}") });
            }
        }
        Ok(())
    }

    /// Dimension of homology at `pos` in each internal degree.
    pub fn homology_dims(&self, pos: i64, degrees: std::ops::RangeInclusive<i64>) -> Vec<usize> {
        let degrees: Vec<i64> = degrees.collect();
        degrees
            .par_iter()
            .map(|&d| {
                let dim = self.term(pos).piece_dim(self.ring, d);
                if dim == 0 {
                    return 0;
                }
                let out = self.diff(pos).realize_matrix(d).rank();
                let inc = self.diff(pos + 1).realize_matrix(d).rank();
                dim - out - inc
            })
            .collect()
    }

    /// The `Q`-dual: duals of generator spaces, negated twists, transposed
    /// differentials, and position `p` moved to `-p`.
    pub fn dualize(&self) -> GradedComplex {
        let n = self.terms.len();
        let terms: Vec<GradedFreeModule> = self.terms.iter().rev().map(GradedFreeModule::dual).collect();
        let diffs: Vec<PolyMap> = self.diffs.iter().rev().map(PolyMap::dual).collect();
        GradedComplex { ring: self.ring, offset: -(self.offset + n as i64 - 1), terms, diffs }
    }

    /// Alternating sum of the dimensions of the degree-`d` pieces.
    pub fn euler_characteristic(&self, d: i64) -> i64 {
        self.positions()
            .map(|p| {
                let dim = self.term(p).piece_dim(self.ring, d) as i64;
                if p.rem_euclid(2) == 0 {
                    dim
                } else {
                    -dim
                }
            })
            .sum()
    }
}

/// Maps `source(p) -> target(p + shift)` for each source position `p`; missing
/// blocks are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: GradedComplex,
    pub target: GradedComplex,
    pub shift: i64,
    pub blocks: BTreeMap<i64, PolyMap>,
}

impl ChainMap {
    pub fn block(&self, p: i64) -> PolyMap {
        self.blocks.get(&p).cloned().unwrap_or_else(|| {
            PolyMap::zero(self.source.ring, self.source.term(p), self.target.term(p + self.shift))
        })
    }

    pub fn identity(c: &GradedComplex) -> ChainMap {
        let blocks = c
            .positions()
            .map(|p| {
                let t = c.term(p);
                let m = SparseMatrix::identity(t.rank());
                (p, PolyMap::from_constant(c.ring, t.clone(), t, &m).expect("identity is homogeneous"))
            })
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), shift: 0, blocks }
    }

    /// Checks `d' ∘ F_p = F_{p-1} ∘ d` for every position.
    pub fn verify(&self) -> Result<Verdict> {
        for (p, b) in &self.blocks {
            let (src, tgt) = (self.source.term(*p), self.target.term(p + self.shift));
            if b.shape() != (tgt.rank(), src.rank()) {
                return Err(Error::DimensionMismatch(format!(
                    "block at position {p} has shape {:?}, expected {:?}",
                    b.shape(),
                    (tgt.rank(), src.rank())
                )));
            }
        }
        let lo = self.source.min_position();
        let hi = self.source.max_position() + 1;
        for p in lo..=hi {
            let left = self.target.diff(p + self.shift).compose(&self.block(p))?;
            let right = self.block(p - 1).compose(&self.source.diff(p))?;
            let diff = left.sub(&right)?;
            if let Some((r, c, e)) = diff.first_nonzero() {
                return Ok(Err(Witness { position: p, row: r, col: c, entry: format!("{e:?}") }));
            }
        }
        Ok(Ok(()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        let mut blocks = BTreeMap::new();
        for p in self.source.positions() {
            let b = other.block(p + self.shift).compose(&self.block(p))?;
            if !b.is_zero() {
                blocks.insert(p, b);
            }
        }
        Ok(ChainMap { source: self.source.clone(), target: other.target.clone(), shift: self.shift + other.shift, blocks })
    }
}

/// Rescales constant blocks `source(p) -> target(p + shift)` position by
/// position, starting from the lowest with scalar 1, so that they commute with
/// the differentials. Returns the chain map and the scalar used at each position.
pub fn propagate_scalars(
    source: &GradedComplex,
    target: &GradedComplex,
    shift: i64,
    blocks: &BTreeMap<i64, SparseMatrix>,
) -> Result<(ChainMap, BTreeMap<i64, Rational>)> {
    let ring = source.ring;
    let mut scaled: BTreeMap<i64, PolyMap> = BTreeMap::new();
    let mut scalars = BTreeMap::new();
    for p in source.positions() {
        let m = blocks.get(&p).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(target.term(p + shift).rank(), source.term(p).rank())
        });
        let block = PolyMap::from_constant(ring, source.term(p), target.term(p + shift), &m)?;
        let left = target.diff(p + shift).compose(&block)?;
        let below = scaled
            .get(&(p - 1))
            .cloned()
            .unwrap_or_else(|| PolyMap::zero(ring, source.term(p - 1), target.term(p - 1 + shift)));
        let right = below.compose(&source.diff(p))?;
        let lambda = match (left.is_zero(), right.is_zero()) {
            (true, true) => Rational::from_integer(1.into()),
            (false, false) => match right.scalar_ratio(&left) {
                Some(r) if !r.is_zero() => r,
                _ => {
                    return Err(Error::Verification(format!(
                        "square at position {p} does not commute up to a nonzero scalar"
                    )))
                }
            },
            _ => return Err(Error::Verification(format!("square at position {p} has one zero side"))),
        };
        scaled.insert(p, block.scale(&lambda));
        scalars.insert(p, lambda);
    }
    let map = ChainMap { source: source.clone(), target: target.clone(), shift, blocks: scaled };
    Ok((map, scalars))
}

pub fn vanishes_at(map: &PolyMap, point: &[Rational]) -> bool {
    map.entries().all(|(_, _, p)| p.evaluate(point).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::subsets;
    use crate::linalg::int;

    /// The Koszul complex `∧^k Q^n ⊗ S(-k)` with `e_A ↦ Σ (-1)^s z_{a_s} e_{A∖a_s}`.
    fn koszul(n: usize) -> GradedComplex {
        let ring = PolyRing::new(n);
        let v = BasisSpace::free(n);
        let terms: Vec<GradedFreeModule> =
            (0..=n).map(|k| GradedFreeModule::single(BasisSpace::wedge(k, &v), k as i64)).collect();
        let diffs = (1..=n)
            .map(|k| {
                let tgt = BasisSpace::wedge(k - 1, &v);
                let mut e = Vec::new();
                for (c, a) in subsets(n, k).iter().enumerate() {
                    for s in 0..k {
                        let mut rest = a.clone();
                        let x = rest.remove(s);
                        let sign = if s % 2 == 0 { 1 } else { -1 };
                        e.push((tgt.idx(&rest), c, ring.var(x).scale(&int(sign))));
                    }
                }
                PolyMap::from_entries(ring, terms[k].clone(), terms[k - 1].clone(), e).unwrap()
            })
            .collect();
        GradedComplex::new(ring, 0, terms, diffs).unwrap()
    }

    #[test]
    fn koszul_is_a_complex_and_exact() {
        let k = koszul(3);
        assert!(k.verify().is_ok());
        for p in 1..=3 {
            assert!(k.homology_dims(p, 0..=6).iter().all(|&h| h == 0));
        }
        assert_eq!(k.homology_dims(0, 0..=3), vec![1, 0, 0, 0]);
        for d in 1..6 {
            assert_eq!(k.euler_characteristic(d), 0);
        }
    }

    #[test]
    fn flipped_sign_is_caught() {
        let mut k = koszul(2);
        k.diffs[1] = k.diffs[1].scale(&int(1));
        let d = &k.diffs[0];
        let entries: Vec<(usize, usize, Poly)> =
            d.entries().map(|(r, c, p)| (r, c, if c == 0 && r == 0 { p.scale(&int(-1)) } else { p.clone() })).collect();
        k.diffs[0] = PolyMap::from_entries(k.ring, d.source.clone(), d.target.clone(), entries).unwrap();
        let w = k.verify().unwrap_err();
        assert_eq!(w.position, 2);
    }

    #[test]
    fn realize_multiplication_by_variable() {
        let ring = PolyRing::new(3);
        let s = BasisSpace::free(1);
        let m = PolyMap::from_entries(
            ring,
            GradedFreeModule::single(s.clone(), 1),
            GradedFreeModule::single(s, 0),
            vec![(0, 0, ring.var(0))],
        )
        .unwrap();
        let r = m.realize_degree(1);
        assert_eq!(r.matrix, SparseMatrix::from_i64(&[vec![1], vec![0], vec![0]]));
        let z = PolyMap::zero(ring, m.source.clone(), m.target.clone());
        assert!(z.realize_matrix(2).is_zero());
    }

    #[test]
    fn inhomogeneous_entries_are_rejected() {
        let ring = PolyRing::new(2);
        let s = BasisSpace::free(1);
        let bad = PolyMap::from_entries(
            ring,
            GradedFreeModule::single(s.clone(), 2),
            GradedFreeModule::single(s, 0),
            vec![(0, 0, ring.var(0))],
        );
        assert!(matches!(bad, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn realization_is_functorial() {
        let k = koszul(3);
        let comp = k.diffs[0].compose(&k.diffs[1]).unwrap();
        for d in 2..5 {
            let lhs = comp.realize_matrix(d);
            let rhs = &k.diffs[0].realize_matrix(d) * &k.diffs[1].realize_matrix(d);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_of_koszul() {
        let k = koszul(2);
        let d = k.dualize();
        assert!(d.verify().is_ok());
        assert_eq!(d.ranks(), vec![1, 2, 1]);
        assert_eq!(d.offset, -2);
        assert_eq!(d.dualize(), k);
        assert_eq!(d.twisted(2).homology_dims(-2, 0..=3), vec![1, 0, 0, 0]);
        assert!(d.twisted(2).homology_dims(0, 0..=3).iter().all(|&h| h == 0));
    }

    #[test]
    fn scalars_propagate_through_koszul() {
        let k = koszul(3);
        let blocks: BTreeMap<i64, SparseMatrix> = k
            .positions()
            .map(|p| (p, SparseMatrix::identity(k.term(p).rank()).scale(&int(p + 2))))
            .collect();
        let (map, scalars) = propagate_scalars(&k, &k, 0, &blocks).unwrap();
        assert_eq!(map.verify().unwrap(), Ok(()));
        assert_eq!(scalars[&1], crate::linalg::rat(2, 3));
        let mut bad = blocks.clone();
        bad.insert(2, SparseMatrix::zeros(3, 3).try_add(&SparseMatrix::from_triplets(3, 3, vec![(0, 0, int(1))])).unwrap());
        assert!(propagate_scalars(&k, &k, 0, &bad).is_err());
    }

    #[test]
    fn chain_map_checks() {
        let k = koszul(2);
        let id = ChainMap::identity(&k);
        assert_eq!(id.verify().unwrap(), Ok(()));
        let mut broken = id.clone();
        let t = k.term(1);
        broken.blocks.insert(1, PolyMap::zero(k.ring, t.clone(), t));
        assert!(broken.verify().unwrap().is_err());
    }
}
