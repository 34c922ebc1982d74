//! Singularity graph, graph decomposition, exponent matrix and weights.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;
use crate::linalg::{self, int_to_big};
use crate::polynomial::{default_names, Monomial, Polynomial, WeightSystem};
use crate::rational::{fmt_q, from_big, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuasihomError {
    #[error("variable x{0} heads no monomial of the form x^a or x^a*x_k")]
    NoGraphMonomial(usize),
    #[error("graph exponent matrix is singular")]
    SingularMatrix,
    #[error("graph exponent matrix has non-positive determinant {0}")]
    NonPositiveDeterminant(i64),
    #[error("monomial {monomial} has weighted degree {degree}, expected 1")]
    NotQuasihomogeneous { monomial: String, degree: String },
    #[error("weight q_{index} = {value} is outside (0, 1/2]")]
    WeightOutOfRange { index: usize, value: String },
}

/// One weakly connected piece of the graph: a cycle (a root counts as a
/// one-vertex cycle) with oriented trees hanging off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    /// Cycle vertices in arrow order, starting from the smallest.
    pub cycle: Vec<usize>,
    /// Each tree is the set of vertices whose path reaches the cycle through
    /// one particular edge; sorted.
    pub trees: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityGraph {
    /// `kappa[j] == j` for roots.
    pub kappa: Vec<usize>,
    /// Graph monomial chosen for each vertex.
    pub monomials: Vec<Monomial>,
    pub components: Vec<Component>,
}

impl SingularityGraph {
    pub fn nvars(&self) -> usize {
        self.kappa.len()
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.kappa
            .iter()
            .enumerate()
            .filter(|(j, k)| j != *k)
            .map(|(j, &k)| (j, k))
            .collect()
    }

    /// Assembles the graph from an explicit choice of graph monomials.
    pub fn from_choice(monomials: Vec<Monomial>) -> Self {
        let n = monomials.len();
        let kappa: Vec<usize> = monomials
            .iter()
            .enumerate()
            .map(|(j, m)| {
                (0..n)
                    .find(|&k| k != j && m.0[k] == 1 && m.0[j] >= 2)
                    .unwrap_or(j)
            })
            .collect();
        let components = components_of(&kappa);
        SingularityGraph {
            kappa,
            monomials,
            components,
        }
    }
}

/// All admissible graph monomials headed by each variable.
pub fn graph_candidates(f: &Polynomial) -> Vec<Vec<Monomial>> {
    let n = f.nvars();
    (0..n)
        .map(|j| {
            f.monomials()
                .filter(|m| {
                    let e = m.exps();
                    if e[j] < 2 {
                        return false;
                    }
                    let others: Vec<usize> = (0..n).filter(|&k| k != j && e[k] > 0).collect();
                    others.is_empty() || (others.len() == 1 && e[others[0]] == 1)
                })
                .cloned()
                .collect()
        })
        .collect()
}

fn candidate_key(j: usize, m: &Monomial) -> (u8, u32, usize) {
    let e = m.exps();
    match (0..e.len()).find(|&k| k != j && e[k] > 0) {
        None => (0, e[j], j),
        Some(k) => (1, e[j], k),
    }
}

pub fn build_graph(f: &Polynomial) -> Result<SingularityGraph, QuasihomError> {
    let cands = graph_candidates(f);
    let mut chosen = Vec::with_capacity(cands.len());
    for (j, c) in cands.iter().enumerate() {
        let best = c
            .iter()
            .min_by_key(|m| candidate_key(j, m))
            .ok_or(QuasihomError::NoGraphMonomial(j + 1))?;
        chosen.push(best.clone());
    }
    Ok(SingularityGraph::from_choice(chosen))
}

fn components_of(kappa: &[usize]) -> Vec<Component> {
    let n = kappa.len();
    // union-find over undirected arrows
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for j in 0..n {
        let (a, b) = (find(&mut parent, j), find(&mut parent, kappa[j]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for j in 0..n {
        let r = find(&mut parent, j);
        groups.entry(r).or_default().push(j);
    }
    groups
        .into_values()
        .map(|vertices| {
            // walk until a vertex repeats
            let mut seen = vec![false; n];
            let mut v = vertices[0];
            while !seen[v] {
                seen[v] = true;
                v = kappa[v];
            }
            let mut cycle = vec![v];
            let mut w = kappa[v];
            while w != v {
                cycle.push(w);
                w = kappa[w];
            }
            let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
            cycle.rotate_left(start);
            let on_cycle = |x: usize| cycle.contains(&x);
            let mut trees: Vec<Vec<usize>> = Vec::new();
            for &c in &cycle {
                for &child in vertices.iter().filter(|&&u| kappa[u] == c && !on_cycle(u)) {
                    let mut tree: Vec<usize> = vertices
                        .iter()
                        .copied()
                        .filter(|&u| {
                            let mut x = u;
                            while !on_cycle(x) {
                                if x == child {
                                    return true;
                                }
                                x = kappa[x];
                            }
                            false
                        })
                        .collect();
                    tree.sort_unstable();
                    trees.push(tree);
                }
            }
            trees.sort();
            Component {
                vertices,
                cycle,
                trees,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphDecomposition {
    pub f0: Polynomial,
    pub trees: Vec<Polynomial>,
    pub f_add: Polynomial,
    pub is_invertible: bool,
    pub is_star_shaped: bool,
    pub component_count: usize,
}

pub fn decompose(f: &Polynomial, g: &SingularityGraph) -> GraphDecomposition {
    let n = f.nvars();
    let part = |vs: &mut dyn Iterator<Item = usize>| {
        Polynomial::from_terms(
            n,
            vs.map(|j| (g.monomials[j].clone(), f.coeff(&g.monomials[j]))),
        )
    };
    let mut f0 = Polynomial::zero(n);
    let mut trees = Vec::new();
    for c in &g.components {
        f0 += &part(&mut c.cycle.iter().copied());
        for t in &c.trees {
            trees.push(part(&mut t.iter().copied()));
        }
    }
    let mut f_add = f.clone();
    f_add -= &f0;
    for t in &trees {
        f_add -= t;
    }
    let is_star_shaped = n >= 2
        && g.components.len() == 1
        && g.components[0].cycle.len() == 1
        && {
            let root = g.components[0].cycle[0];
            (0..n).all(|j| j == root || g.kappa[j] == root)
        };
    GraphDecomposition {
        f0,
        trees,
        f_add,
        is_invertible: f.len() == n,
        is_star_shaped,
        component_count: g.components.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    pub rows: Vec<Vec<i64>>,
    pub det: i64,
}

impl ExponentMatrix {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn to_big(&self) -> linalg::Matrix<BigRational> {
        int_to_big(&self.rows)
    }

    pub fn inverse(&self) -> linalg::Matrix<BigRational> {
        linalg::inverse(&self.to_big()).expect("exponent matrix is invertible")
    }

    pub fn transpose(&self) -> ExponentMatrix {
        let n = self.n();
        ExponentMatrix {
            rows: (0..n).map(|j| (0..n).map(|i| self.rows[i][j]).collect()).collect(),
            det: self.det,
        }
    }
}

pub fn exponent_matrix(g: &SingularityGraph) -> Result<ExponentMatrix, QuasihomError> {
    let rows: Vec<Vec<i64>> = g
        .monomials
        .iter()
        .map(|m| m.exps().iter().map(|&a| a as i64).collect())
        .collect();
    let det = linalg::det(&int_to_big(&rows));
    if det.is_zero() {
        return Err(QuasihomError::SingularMatrix);
    }
    let det: i64 = det.to_integer().try_into().expect("determinant fits in i64");
    if det <= 0 {
        return Err(QuasihomError::NonPositiveDeterminant(det));
    }
    Ok(ExponentMatrix { rows, det })
}

fn solve_ones(m: &linalg::Matrix<BigRational>) -> Vec<BigRational> {
    let inv = linalg::inverse(m).expect("invertible");
    let ones = vec![BigRational::one(); m.len()];
    linalg::mat_vec(&inv, &ones)
}

pub fn solve_weights(f: &Polynomial, e: &ExponentMatrix) -> Result<WeightSystem, QuasihomError> {
    let q: Vec<Q> = solve_ones(&e.to_big())
        .iter()
        .map(|x| from_big(x).expect("weights are small rationals"))
        .collect();
    let names = default_names(f.nvars());
    for m in f.monomials() {
        let d = m.weighted_degree(&q);
        if d != Q::one() {
            return Err(QuasihomError::NotQuasihomogeneous {
                monomial: m.display_with(&names),
                degree: fmt_q(d),
            });
        }
    }
    for (i, &x) in q.iter().enumerate() {
        if x <= Q::zero() || x > Q::new(1, 2) {
            return Err(QuasihomError::WeightOutOfRange {
                index: i + 1,
                value: fmt_q(x),
            });
        }
    }
    let d = q
        .iter()
        .map(|x| (x * Q::from_integer(e.det)).to_integer())
        .collect();
    Ok(WeightSystem { d0: e.det, d, q })
}

pub fn check_cy(w: &WeightSystem) -> bool {
    w.sum() == Q::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AtomKind::Fermat => "Fermat",
            AtomKind::Chain => "chain",
            AtomKind::Loop => "loop",
        })
    }
}

/// Chains list vertices from the leaf to the root; loops start at the
/// smallest vertex and follow the arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    pub vars: Vec<usize>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Invertible(Vec<Atom>),
    NotInvertible,
}

pub fn classify_invertible(
    f: &Polynomial,
    g: &SingularityGraph,
    d: &GraphDecomposition,
) -> Classification {
    if !d.is_invertible || !d.f_add.is_zero() {
        return Classification::NotInvertible;
    }
    let expo = |j: usize| g.monomials[j].exps()[j];
    let mut atoms = Vec::new();
    for c in &g.components {
        let atom = if c.trees.is_empty() {
            let kind = if c.cycle.len() == 1 {
                AtomKind::Fermat
            } else {
                AtomKind::Loop
            };
            Atom {
                kind,
                vars: c.cycle.clone(),
                exponents: c.cycle.iter().map(|&j| expo(j)).collect(),
            }
        } else if c.cycle.len() == 1 && c.trees.len() == 1 {
            // one branch: every vertex has at most one incoming arrow
            let root = c.cycle[0];
            let mut path = vec![root];
            loop {
                let last = *path.last().unwrap();
                let incoming: Vec<usize> = c
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&u| u != last && g.kappa[u] == last)
                    .collect();
                match incoming.len() {
                    0 => break,
                    1 => path.push(incoming[0]),
                    _ => return Classification::NotInvertible,
                }
            }
            path.reverse();
            Atom {
                kind: AtomKind::Chain,
                exponents: path.iter().map(|&j| expo(j)).collect(),
                vars: path,
            }
        } else {
            return Classification::NotInvertible;
        };
        atoms.push(atom);
    }
    debug_assert_eq!(f.nvars(), atoms.iter().map(|a| a.vars.len()).sum::<usize>());
    Classification::Invertible(atoms)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transpose {
    pub poly: Polynomial,
    pub q: Vec<Q>,
    pub all_positive: bool,
}

/// `f^T = Σ c_k x^{column k}` with `c_k` the coefficient of row `k`'s monomial.
pub fn transpose_polynomial(e: &ExponentMatrix, coeffs: &[CycNum]) -> Transpose {
    let et = e.transpose();
    let n = e.n();
    let poly = Polynomial::from_terms(
        n,
        (0..n).map(|k| {
            (
                Monomial(et.rows[k].iter().map(|&a| a as u32).collect()),
                coeffs[k].clone(),
            )
        }),
    );
    let q: Vec<Q> = solve_ones(&et.to_big())
        .iter()
        .map(|x| from_big(x).expect("small rational"))
        .collect();
    let all_positive = q.iter().all(|x| *x > Q::zero());
    Transpose {
        poly,
        q,
        all_positive,
    }
}

/// Everything the `analyze` command reports.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: SingularityGraph,
    pub decomposition: GraphDecomposition,
    pub exponents: ExponentMatrix,
    pub weights: WeightSystem,
    pub is_cy: bool,
    pub classification: Classification,
    pub transpose: Transpose,
}

pub fn analyze(f: &Polynomial) -> Result<Analysis, QuasihomError> {
    let graph = build_graph(f)?;
    let decomposition = decompose(f, &graph);
    let exponents = exponent_matrix(&graph)?;
    let weights = solve_weights(f, &exponents)?;
    let is_cy = check_cy(&weights);
    let classification = classify_invertible(f, &graph, &decomposition);
    let coeffs: Vec<CycNum> = graph.monomials.iter().map(|m| f.coeff(m)).collect();
    let transpose = transpose_polynomial(&exponents, &coeffs);
    Ok(Analysis {
        graph,
        decomposition,
        exponents,
        weights,
        is_cy,
        classification,
        transpose,
    })
}

/// Integer determinant helper used by tests and diagnostics.
pub fn int_det(rows: &[Vec<i64>]) -> BigInt {
    let d = linalg::det(&int_to_big(rows));
    debug_assert!(d.is_integer());
    d.to_integer()
}
