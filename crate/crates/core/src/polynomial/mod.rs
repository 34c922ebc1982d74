//! Sparse multivariate polynomials over [`CycNum`].

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cyclotomic::CycNum;
use crate::linalg::{self, Matrix};
use crate::rational::{fmt_big, lcm_all, Q};

pub use parse::{infer_variables, parse_expr, parse_poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("mixed quadratic monomial {0} is not allowed")]
    MixedQuadratic(String),
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, q: &[Q]) -> Q {
        assert_eq!(q.len(), self.0.len(), "weight vector length");
        self.0
            .iter()
            .zip(q)
            .fold(Q::zero(), |acc, (&a, &w)| acc + w * Q::from_integer(a as i64))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_mixed_quadratic(&self) -> bool {
        self.degree() == 2 && self.0.iter().filter(|&&a| a == 1).count() == 2
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Integer weights `d_k` with common degree `d0`, and reduced weights `q_k = d_k / d0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub d0: i64,
    pub d: Vec<i64>,
    pub q: Vec<Q>,
}

impl WeightSystem {
    /// Uses the lcm of the denominators as `d0`.
    pub fn from_q(q: Vec<Q>) -> Self {
        let d0 = lcm_all(q.iter().map(|x| *x.denom() as u64)) as i64;
        let d = q.iter().map(|x| (x * Q::from_integer(d0)).to_integer()).collect();
        WeightSystem { d0, d, q }
    }

    pub fn nvars(&self) -> usize {
        self.q.len()
    }

    pub fn sum(&self) -> Q {
        self.q.iter().fold(Q::zero(), |a, x| a + x)
    }

    /// Top degree `Σ (1 - 2 q_k)` of the Jacobian algebra.
    pub fn c_hat(&self) -> Q {
        self.q
            .iter()
            .fold(Q::zero(), |a, x| a + Q::from_integer(1) - x * Q::from_integer(2))
    }

    pub fn restrict(&self, idx: &[usize]) -> WeightSystem {
        WeightSystem::from_q(idx.iter().map(|&i| self.q[i]).collect())
    }
}

pub fn weighted_degree(m: &Monomial, w: &WeightSystem) -> Q {
    m.weighted_degree(&w.q)
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycNum::one(1))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), CycNum::one(1))
    }

    pub fn monomial(m: Monomial, c: CycNum) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, CycNum)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(|| CycNum::zero(1))
    }

    pub fn add_term(&mut self, m: Monomial, c: CycNum) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lcm of the conductors of non-rational coefficients.
    pub fn conductor(&self) -> u32 {
        lcm_all(
            self.terms
                .values()
                .filter(|c| !c.is_rational())
                .map(|c| c.conductor() as u64),
        ) as u32
    }

    pub fn lift(&self, n: u32) -> Result<Self, crate::cyclotomic::CycError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.lift(n)?);
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycNum) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let a = m.0[i];
            if a == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * &CycNum::from_int(1, a as i64));
        }
        out
    }

    /// `p(L·y)`: `L` has one row per old variable and one column per new one.
    pub fn substitute_linear(&self, l: &Matrix<CycNum>) -> Result<Self, PolyError> {
        if l.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: l.len(),
            });
        }
        let m = linalg::ncols(l);
        if l.iter().any(|r| r.len() != m) {
            return Err(PolyError::DimensionMismatch {
                expected: m,
                found: l.iter().map(Vec::len).find(|&k| k != m).unwrap_or(m),
            });
        }
        let images: Vec<Polynomial> = l
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    m,
                    row.iter()
                        .enumerate()
                        .map(|(j, c)| (Monomial::var(m, j), c.clone())),
                )
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(m), p.clone()])
            .collect();
        let mut out = Self::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (i, &a) in mono.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[i].len() <= a as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][a as usize];
                if t.is_zero() {
                    break;
                }
            }
            out += &t;
        }
        Ok(out)
    }

    /// Weighted degree if every term has the same one; `Some(0)` for zero.
    pub fn homogeneous_degree(&self, q: &[Q]) -> Option<Q> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(q));
        let Some(first) = it.next() else {
            return Some(Q::zero());
        };
        it.all(|d| d == first).then_some(first)
    }

    /// Determinant of the matrix of second partials; `1` in zero variables.
    pub fn hessian(&self) -> Self {
        let n = self.nvars;
        if n == 0 {
            return Self::one(0);
        }
        let first: Vec<Polynomial> = (0..n).map(|i| self.partial_derivative(i)).collect();
        let h: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| first[i].partial_derivative(j)).collect())
            .collect();
        poly_det(&h, n)
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &a) in m.0.iter().enumerate() {
                e[perm[i]] = a;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = coeff_body(c);
            let is_const = m.degree() == 0;
            let mono = m.display_with(names);
            let term = match (body.as_deref(), is_const) {
                (None, true) => "1".to_string(),
                (None, false) => mono,
                (Some(b), true) => b.to_string(),
                (Some(b), false) => format!("{b}*{mono}"),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&term);
        }
        s
    }
}

/// Splits a coefficient into a sign and a printable magnitude (`None` for 1).
fn coeff_body(c: &CycNum) -> (bool, Option<String>) {
    if let Some(r) = c.as_rational() {
        let neg = r.is_negative();
        let a = r.abs();
        return (neg, (!a.is_one()).then(|| fmt_big(&a)));
    }
    let nonzero: Vec<_> = c.coeffs().iter().filter(|x| !x.is_zero()).collect();
    if nonzero.len() == 1 {
        let x = nonzero[0];
        let neg = x.is_negative();
        let pos = if neg { -c } else { c.clone() };
        return (neg, Some(pos.to_string()));
    }
    (false, Some(format!("({c})")))
}

fn poly_det(m: &[Vec<Polynomial>], n: usize) -> Polynomial {
    fn rec(m: &[Vec<Polynomial>], col: usize, used: u64, n: usize) -> Polynomial {
        if col == n {
            return Polynomial::one(m[0][0].nvars());
        }
        let nv = m[0][0].nvars();
        let mut acc = Polynomial::zero(nv);
        let mut sign_pos = true;
        for r in 0..n {
            if used & (1 << r) != 0 {
                continue;
            }
            let entry = &m[r][col];
            if !entry.is_zero() {
                let minor = rec(m, col + 1, used | (1 << r), n);
                let t = entry * &minor;
                if sign_pos {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            sign_pos = !sign_pos;
        }
        acc
    }
    rec(m, 0, 0, n)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

impl std::ops::AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
