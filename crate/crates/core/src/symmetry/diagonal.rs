//! Diagonal symmetry groups and the grading element.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::{GroupElement, SymmetryError};
use crate::linalg;
use crate::polynomial::{Polynomial, WeightSystem};
use crate::quasihom::ExponentMatrix;
use crate::rational::{frac, from_big, to_big, Q};
use crate::smith::smith_normal_form;

/// Finite abelian group of diagonal phase vectors in `(Q/Z)^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalGroup {
    pub generators: Vec<Vec<Q>>,
    /// Nontrivial invariant factors; the group is `⊕ Z/d_i`.
    pub invariant_factors: Vec<i64>,
    pub order: u64,
}

impl DiagonalGroup {
    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    /// All elements, as reduced phase vectors, in lexicographic order.
    pub fn elements(&self, n: usize) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); n]];
        for (g, &d) in self.generators.iter().zip(&self.invariant_factors) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for x in &out {
                for k in 0..d {
                    next.push(
                        x.iter()
                            .zip(g)
                            .map(|(a, b)| frac(a + b * Q::from_integer(k)))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Elements with determinant 1, with a greedily chosen generating set.
    pub fn sl_part(&self, n: usize) -> Vec<Vec<Q>> {
        let sl: Vec<Vec<Q>> = self
            .elements(n)
            .into_iter()
            .filter(|v| v.iter().fold(Q::zero(), |a, x| a + x).is_integer())
            .collect();
        greedy_generators(&sl, n)
    }
}

/// Picks elements until they generate all of `members` (a subgroup).
pub fn greedy_generators(members: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut span: HashSet<Vec<Q>> = HashSet::from([vec![Q::zero(); n]]);
    let mut gens = Vec::new();
    for v in members {
        if span.contains(v) {
            continue;
        }
        gens.push(v.clone());
        // close the span under adding v
        let mut frontier: Vec<Vec<Q>> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            let y: Vec<Q> = x.iter().zip(v).map(|(a, b)| frac(a + b)).collect();
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
        if span.len() == members.len() {
            break;
        }
    }
    gens
}

/// Solves `A·v ∈ Z^m` over `v ∈ (Q/Z)^N` for the stacked exponent rows `A`.
pub fn solve_phase_lattice(rows: &[Vec<i64>], n: usize) -> Result<DiagonalGroup, SymmetryError> {
    let s = smith_normal_form(rows);
    if s.diag.len() < n || s.diag.contains(&0) {
        return Err(SymmetryError::InfiniteDiagonalGroup);
    }
    let mut generators = Vec::new();
    let mut invariant_factors = Vec::new();
    for (i, &d) in s.diag.iter().enumerate() {
        if d > 1 {
            generators.push(
                (0..n)
                    .map(|r| frac(Q::new(s.v[r][i], d)))
                    .collect::<Vec<Q>>(),
            );
            invariant_factors.push(d);
        }
    }
    let order = invariant_factors.iter().map(|&d| d as u64).product();
    Ok(DiagonalGroup {
        generators,
        invariant_factors,
        order,
    })
}

/// The maximal diagonal symmetry group, using every monomial of `f`.
pub fn diagonal_symmetries(f: &Polynomial) -> Result<DiagonalGroup, SymmetryError> {
    let rows: Vec<Vec<i64>> = f
        .monomials()
        .map(|m| m.exps().iter().map(|&a| a as i64).collect())
        .collect();
    solve_phase_lattice(&rows, f.nvars())
}

/// The group preserving the graph monomials only, `E_f^{-1} Z^N / Z^N`.
pub fn graph_symmetries(e: &ExponentMatrix) -> DiagonalGroup {
    solve_phase_lattice(&e.rows, e.n()).expect("exponent matrix has full rank")
}

/// Columns of `E_f^{-1}` reduced mod 1.
pub fn krawitz_generators(e: &ExponentMatrix) -> Vec<Vec<Q>> {
    let inv = e.inverse();
    let n = e.n();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| frac(from_big(&inv[i][j]).expect("small rational")))
                .collect()
        })
        .collect()
}

pub fn make_jf(w: &WeightSystem) -> GroupElement {
    GroupElement::diagonal(w.q.clone())
}

/// `(1,…,1)·E⁻¹·s` with `s = E·ḡ`, which must be integral.
pub fn age_via_matrix(gbar: &[Q], e: &ExponentMatrix) -> Result<Q, SymmetryError> {
    let big = e.to_big();
    let g: Vec<BigRational> = gbar.iter().map(|&x| to_big(frac(x))).collect();
    let s = linalg::mat_vec(&big, &g);
    if s.iter().any(|x| !x.is_integer()) {
        return Err(SymmetryError::NotInGraphGroup);
    }
    let sol = linalg::solve(&big, &s.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>())
        .expect("exponent matrix is invertible");
    let total = sol
        .iter()
        .fold(BigRational::zero(), |acc, r| acc + &r[0]);
    Ok(from_big(&total).expect("small rational"))
}
