//! Polynomials with rational coefficients in a fixed number of variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::basis::BasisSpace;
use crate::combin::{exponents, multisets};
use crate::linalg::{format_rational, Rational};

/// `Q[z_0, ..., z_{n-1}]`; degree-`d` monomials are ordered as the basis of
/// `Sym^d(Q^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub num_vars: usize,
}

impl PolyRing {
    pub fn new(num_vars: usize) -> Self {
        PolyRing { num_vars }
    }

    pub fn graded_dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        crate::linalg::rational::binomial(self.num_vars as i64 - 1 + d, d) as usize
    }

    /// Exponent vectors of the degree-`d` monomials, in basis order.
    pub fn monomials(&self, d: usize) -> Vec<Vec<usize>> {
        multisets(self.num_vars, d).iter().map(|m| exponents(m, self.num_vars)).collect()
    }

    pub fn monomial_index(&self, d: usize) -> HashMap<Vec<usize>, usize> {
        self.monomials(d).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
    }

    /// `S_d` as a based space, `Sym^d` of the space of variables.
    pub fn piece(&self, d: usize) -> BasisSpace {
        BasisSpace::sym(d, &BasisSpace::free(self.num_vars))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.num_vars, i)
    }

    pub fn constant(&self, c: Rational) -> Poly {
        Poly::constant(self.num_vars, c)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.num_vars)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(exps: Vec<usize>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<usize>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[usize]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<usize>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<usize>() as i64 == d)
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Multiplies by the monomial with exponents `m`.
    pub fn shift(&self, m: &[usize]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Canonical string map `"e0,e1,..." -> "p/q"`.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let key: Vec<String> = e.iter().map(usize::to_string).collect();
                (key.join(","), format_rational(c))
            })
            .collect()
    }

    pub fn display_with(&self, var_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { var_names[i].clone() } else { format!("{}^{k}", var_names[i]) })
                .collect();
            let coeff = format_rational(c);
            parts.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) => format!("{coeff}*{}", mono.join("*")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

/// Determinant of a square matrix of polynomials by Berkowitz's division-free
/// algorithm.
pub fn determinant(a: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = a.len();
    let one = Poly::constant(nvars, Rational::one());
    if n == 0 {
        return one;
    }
    let mut v = vec![one.clone(), -&a[0][0]];
    for r in 1..n {
        // powers A_r^k C for the leading r x r block and the column above a[r][r]
        let mut t = vec![one.clone(), -&a[r][r]];
        let mut col: Vec<Poly> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(Poly::zero(nvars), |acc, k| &acc + &(&a[r][k] * &col[k]));
            t.push(-&dot);
            col = (0..r)
                .map(|i| (0..r).fold(Poly::zero(nvars), |acc, k| &acc + &(&a[i][k] * &col[k])))
                .collect();
        }
        let mut next = vec![Poly::zero(nvars); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot = &*slot + &(&t[i - j] * vj);
            }
        }
        v = next;
    }
    let det = v.pop().expect("nonempty");
    if n % 2 == 0 {
        det
    } else {
        -&det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn arithmetic() {
        let r = PolyRing::new(3);
        let x = r.var(0);
        let y = r.var(1);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert!((&p - &p).is_zero());
        assert_eq!(p.evaluate(&[int(3), int(1), int(7)]), int(8));
        assert_eq!((&x + &r.constant(int(1))).homogeneous_degree(), None);
    }

    #[test]
    fn graded_pieces() {
        let r = PolyRing::new(4);
        assert_eq!(r.graded_dim(2), 10);
        assert_eq!(r.graded_dim(-1), 0);
        assert_eq!(r.monomials(1)[0], vec![1, 0, 0, 0]);
        assert_eq!(r.piece(3).dim(), r.graded_dim(3));
    }

    fn laplace(a: &[Vec<Poly>], nvars: usize) -> Poly {
        if a.is_empty() {
            return Poly::constant(nvars, int(1));
        }
        let mut acc = Poly::zero(nvars);
        for c in 0..a.len() {
            let minor: Vec<Vec<Poly>> =
                a[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect()).collect();
            let term = &a[0][c] * &laplace(&minor, nvars);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_laplace() {
        let r = PolyRing::new(3);
        for n in 0..5 {
            let a: Vec<Vec<Poly>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let k = (i * 7 + j * 3) % 5;
                            &r.var(k % 3).scale(&int(k as i64 - 2)) + &r.constant(int((i + 2 * j) as i64 % 3))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&a, 3), laplace(&a, 3));
        }
        let generic: Vec<Vec<Poly>> = (0..3).map(|i| (0..3).map(|j| Poly::var(9, 3 * i + j)).collect()).collect();
        assert_eq!(determinant(&generic, 9).num_terms(), 6);
    }

    #[test]
    fn string_forms() {
        let r = PolyRing::new(2);
        let p = &r.var(0).scale(&rat(-1, 2)) + &r.var(1);
        assert_eq!(format!("{p:?}"), "-1/2*z0 + z1");
        let m = p.to_string_map();
        assert_eq!(m.get("1,0").unwrap(), "-1/2");
    }
}
