//! The orbifold state space `B(f, G)`: sectors, bigrading, group action and invariants.

mod diamond;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::jacobian::{JacobianError, JacobianRing, RingCache};
use crate::linalg::{self, Field, Matrix};
use crate::polynomial::{Monomial, Polynomial, WeightSystem};
use crate::rational::{fmt_q, frac, lcm_all, Q};
use crate::symmetry::{
    fixed_locus, make_jf, restrict, rho_phase, transport_phases, FiniteGroup, FixedLocus,
    GroupElement,
};

pub use diamond::{
    assemble_diamond, check_preconditions, phi_gram, psi, verify_theorem, Check, Diamond,
    Verification,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    NotCalabiYau(Q),
    MissingJ,
    NotInSL(String),
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::NotCalabiYau(s) => write!(f, "CY condition fails: sum of weights is {}", fmt_q(*s)),
            Precondition::MissingJ => write!(f, "G does not contain j_f"),
            Precondition::NotInSL(g) => write!(f, "G is not in SL: det({g}) != 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateSpaceError {
    #[error("polynomial is not weighted homogeneous on the fixed locus")]
    NonHomogeneous,
    #[error("invariant {0} has a non-integral charge")]
    NonIntegerCharge(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("sector ring: {0}")]
    Jacobian(#[from] JacobianError),
    #[error("element is not in the group: {0}")]
    NotInGroup(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Charges {
    pub q_l: Q,
    pub q_r: Q,
}

impl fmt::Display for Charges {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(self.q_l), fmt_q(self.q_r))
    }
}

#[derive(Debug, Clone)]
pub struct Sector {
    pub g: GroupElement,
    pub fixed: FixedLocus,
    /// `f^g` in the coordinates of `Fix(g)`.
    pub restriction: Polynomial,
    pub ring: Arc<JacobianRing>,
    pub age: Q,
    pub age_inv: Q,
    /// Charges of `[m]ξ_g` for each standard monomial `m` of `ring`.
    pub charges: Vec<Charges>,
}

impl Sector {
    pub fn n_g(&self) -> usize {
        self.fixed.n_g()
    }

    pub fn mu(&self) -> usize {
        self.ring.mu()
    }

    /// Coordinate names on `Fix(g)`: each is named after the smallest
    /// variable of its cycle.
    pub fn coordinate_names(&self, names: &[String]) -> Vec<String> {
        self.fixed
            .fixed_cycles
            .iter()
            .map(|&i| names[i].clone())
            .collect()
    }
}

/// Charges of `[p]ξ_g`; `p` must be weighted homogeneous on `Fix(g)`.
pub fn charges(p: &Polynomial, sector: &Sector) -> Result<Charges, StateSpaceError> {
    let deg = p
        .homogeneous_degree(&sector.fixed.weights)
        .ok_or(StateSpaceError::NonHomogeneous)?;
    let base = deg - sector.fixed.sum_complement_q;
    Ok(Charges {
        q_l: base + sector.age,
        q_r: base + sector.age_inv,
    })
}

/// One basis element `[m]ξ_g` of `B_tot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub sector: usize,
    pub basis: usize,
}

/// All basis elements of one bidegree, with the invariant subspace.
#[derive(Debug, Clone)]
pub struct Block {
    pub bidegree: Charges,
    pub elements: Vec<Element>,
    /// Basis of the invariants, in reduced echelon form, as coordinate
    /// vectors over `elements`.
    pub invariants: Vec<Vec<CycNum>>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_integral(&self) -> bool {
        self.bidegree.q_l.is_integer() && self.bidegree.q_r.is_integer()
    }
}

/// Data of `h: Fix(g) → Fix(hgh⁻¹)`: coordinates transform as
/// `y_j = e[φ_j]·y'_{k_j}` and `ξ_g ↦ rho·ξ_{hgh⁻¹}`.
#[derive(Debug, Clone)]
pub struct Transport {
    pub target: usize,
    pub t: Vec<(usize, Q)>,
    pub rho: CycNum,
}

impl Transport {
    /// `T` as a matrix over the cyclotomic field.
    pub fn matrix(&self, conductor: u32) -> Matrix<CycNum> {
        let n = self.t.len();
        let mut m: Matrix<CycNum> = linalg::zeros(n, n);
        for (j, &(k, phi)) in self.t.iter().enumerate() {
            m[j][k] = CycNum::root_of_unity(conductor, phi).expect("conductor covers the group");
        }
        m
    }
}

type SparseVec = Vec<(usize, CycNum)>;

#[derive(Debug)]
pub struct StateSpace {
    pub f: Polynomial,
    pub weights: WeightSystem,
    pub group: FiniteGroup,
    pub conductor: u32,
    /// Indexed like `group.elements()`.
    pub sectors: Vec<Sector>,
    /// Sorted by bidegree.
    pub blocks: Vec<Block>,
    block_of: HashMap<Charges, usize>,
    /// `(block, position)` for each `[sector][basis]`.
    position: Vec<Vec<(usize, usize)>>,
    transports: Mutex<HashMap<(usize, usize), Arc<Transport>>>,
}

impl StateSpace {
    /// Builds every sector and computes the invariants of every block.
    pub fn build(
        f: &Polynomial,
        w: &WeightSystem,
        group: FiniteGroup,
        cache: &RingCache,
    ) -> Result<Self, StateSpaceError> {
        let conductor = lcm_all([group.conductor(), f.conductor() as u64]) as u32;
        let f = f.lift(conductor).expect("conductor is a multiple");
        let mut sectors = Vec::with_capacity(group.order());
        for g in group.elements() {
            let fixed = fixed_locus(g, w, conductor);
            let restriction = restrict(&f, &fixed);
            let ring = cache.get(&restriction, &fixed.weight_system())?;
            let (age, age_inv) = (g.age(), g.inverse().age());
            let mut sector = Sector {
                g: g.clone(),
                fixed,
                restriction,
                ring,
                age,
                age_inv,
                charges: Vec::new(),
            };
            sector.charges = (0..sector.mu())
                .map(|i| charges(&sector.ring.basis_polynomial(i), &sector))
                .collect::<Result<_, _>>()?;
            sectors.push(sector);
        }
        let mut by_degree: BTreeMap<Charges, Vec<Element>> = BTreeMap::new();
        for (s, sec) in sectors.iter().enumerate() {
            for (i, c) in sec.charges.iter().enumerate() {
                by_degree
                    .entry(*c)
                    .or_default()
                    .push(Element { sector: s, basis: i });
            }
        }
        let mut position: Vec<Vec<(usize, usize)>> =
            sectors.iter().map(|s| vec![(0, 0); s.mu()]).collect();
        let mut blocks = Vec::new();
        let mut block_of = HashMap::new();
        for (b, (bidegree, elements)) in by_degree.into_iter().enumerate() {
            for (p, e) in elements.iter().enumerate() {
                position[e.sector][e.basis] = (b, p);
            }
            block_of.insert(bidegree, b);
            blocks.push(Block {
                bidegree,
                elements,
                invariants: Vec::new(),
            });
        }
        let mut space = StateSpace {
            f,
            weights: w.clone(),
            group,
            conductor,
            sectors,
            blocks,
            block_of,
            position,
            transports: Mutex::new(HashMap::new()),
        };
        let invariants: Vec<Vec<Vec<CycNum>>> = {
            let space = &space;
            let nb = space.blocks.len();
            let workers = std::thread::available_parallelism()
                .map_or(1, |n| n.get())
                .min(nb.max(1));
            let mut out: Vec<Option<Vec<Vec<CycNum>>>> = vec![None; nb];
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers)
                    .map(|k| {
                        scope.spawn(move || {
                            (k..nb)
                                .step_by(workers)
                                .map(|b| (b, space.compute_invariants(b)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                for h in handles {
                    for (b, inv) in h.join().expect("worker panicked") {
                        out[b] = Some(inv);
                    }
                }
            });
            out.into_iter().map(|x| x.expect("every block computed")).collect()
        };
        for (block, inv) in space.blocks.iter_mut().zip(invariants) {
            block.invariants = inv;
        }
        Ok(space)
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn block(&self, bidegree: Charges) -> Option<&Block> {
        self.block_of.get(&bidegree).map(|&b| &self.blocks[b])
    }

    pub fn block_index(&self, bidegree: Charges) -> Option<usize> {
        self.block_of.get(&bidegree).copied()
    }

    pub fn position(&self, e: Element) -> (usize, usize) {
        self.position[e.sector][e.basis]
    }

    /// Total dimension of `B(f, G)`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.invariants.len()).sum()
    }

    pub fn transport(&self, h: usize, g: usize) -> Arc<Transport> {
        if let Some(t) = self.transports.lock().expect("lock").get(&(h, g)) {
            return t.clone();
        }
        let target = self.group.conj(h, g);
        let hel = self.group.element(h);
        let (from, to) = (&self.sectors[g].fixed, &self.sectors[target].fixed);
        let (negative, theta) = rho_phase(hel, from, to);
        let mut rho = CycNum::root_of_unity(self.conductor, theta).expect("conductor covers the group");
        if negative {
            rho = -&rho;
        }
        let tr = Transport {
            target,
            t: transport_phases(hel, from, to),
            rho,
        };
        let tr = Arc::new(tr);
        self.transports
            .lock()
            .expect("lock")
            .entry((h, g))
            .or_insert(tr)
            .clone()
    }

    /// `h^*([m_i]ξ_g)` as (target sector, coordinates in its ring).
    pub fn image(&self, h: usize, e: Element) -> (usize, SparseVec) {
        let tr = self.transport(h, e.sector);
        let m = &self.sectors[e.sector].ring.basis[e.basis];
        let mut exps = vec![0u32; tr.t.len()];
        let mut phase = Q::zero();
        for (&a, &(k, phi)) in m.exps().iter().zip(&tr.t) {
            exps[k] += a;
            phase += phi * Q::from_integer(a as i64);
        }
        let c = &CycNum::root_of_unity(self.conductor, frac(phase)).expect("conductor covers the group")
            * &tr.rho;
        let moved = Monomial(exps);
        let ring = &self.sectors[tr.target].ring;
        if let Some(i) = ring.index_of(&moved) {
            return (tr.target, vec![(i, c)]);
        }
        let coords = ring
            .coordinates(&Polynomial::monomial(moved, c))
            .into_iter()
            .collect();
        (tr.target, coords)
    }

    /// Column of `h^*` for block element `j`, in block coordinates.
    fn action_column(&self, h: usize, b: usize, j: usize) -> SparseVec {
        let (target, coords) = self.image(h, self.blocks[b].elements[j]);
        coords
            .into_iter()
            .map(|(i, c)| {
                let (bb, p) = self.position[target][i];
                debug_assert_eq!(bb, b, "action preserves charges");
                (p, c)
            })
            .collect()
    }

    /// Matrix of `h^*` on block `b`.
    pub fn action_matrix(&self, h: usize, b: usize) -> Matrix<CycNum> {
        let n = self.blocks[b].dim();
        let mut m: Matrix<CycNum> = linalg::zeros(n, n);
        for j in 0..n {
            for (i, c) in self.action_column(h, b, j) {
                m[i][j] = c;
            }
        }
        m
    }

    fn reynolds_column(&self, b: usize, j: usize) -> SparseVec {
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for h in 0..self.group.order() {
            for (i, c) in self.action_column(h, b, j) {
                let e = acc.entry(i).or_insert_with(|| CycNum::zero(1));
                *e = &*e + &c;
            }
        }
        let scale = CycNum::from_q(1, Q::new(1, self.group.order() as i64));
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, &c * &scale))
            .collect()
    }

    /// Reynolds operator `(1/|G|) Σ_h h^*` on block `b`.
    pub fn reynolds(&self, b: usize) -> Matrix<CycNum> {
        let n = self.blocks[b].dim();
        let mut m: Matrix<CycNum> = linalg::zeros(n, n);
        for j in 0..n {
            for (i, c) in self.reynolds_column(b, j) {
                m[i][j] = c;
            }
        }
        m
    }

    /// Checks `R² = R` on block `b` using sparse columns.
    pub fn reynolds_is_idempotent(&self, b: usize) -> bool {
        let n = self.blocks[b].dim();
        let cols: Vec<SparseVec> = (0..n).map(|j| self.reynolds_column(b, j)).collect();
        cols.iter().all(|col| {
            let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
            for (k, c) in col {
                for (i, d) in &cols[*k] {
                    let e = acc.entry(*i).or_insert_with(|| CycNum::zero(1));
                    *e = &*e + &(c * d);
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc.into_iter().eq(col.iter().cloned())
        })
    }

    fn compute_invariants(&self, b: usize) -> Vec<Vec<CycNum>> {
        let n = self.blocks[b].dim();
        let mut rows: Vec<(usize, Vec<CycNum>)> = Vec::new();
        for j in 0..n {
            let mut v: Vec<CycNum> = vec![CycNum::zero(1); n];
            for (i, c) in self.reynolds_column(b, j) {
                v[i] = c;
            }
            for (p, r) in &rows {
                if v[*p].is_zero() {
                    continue;
                }
                let factor = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = Field::inv(&v[p]);
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
                rows.push((p, v));
            }
        }
        let mut m: Matrix<CycNum> = rows.into_iter().map(|(_, r)| r).collect();
        linalg::rref(&mut m);
        m
    }

    /// Applies `h^*` to a block vector.
    pub fn apply(&self, h: usize, b: usize, v: &[CycNum]) -> Vec<CycNum> {
        let mut out = vec![CycNum::zero(1); v.len()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in self.action_column(h, b, j) {
                out[i] = &out[i] + &(x * &c);
            }
        }
        out
    }

    /// Re-applies every generator to every stored invariant.
    pub fn invariants_are_fixed(&self) -> bool {
        let gens: Vec<usize> = self
            .group
            .generators()
            .iter()
            .map(|g| self.group.index_of(g).expect("generator in group"))
            .collect();
        self.blocks.iter().enumerate().all(|(b, block)| {
            block
                .invariants
                .iter()
                .all(|v| gens.iter().all(|&h| self.apply(h, b, v) == *v))
        })
    }

    /// Invariant dimension of block `b` by the centralizer trace formula.
    pub fn invariants_dim_oracle(&self, b: usize) -> usize {
        let block = &self.blocks[b];
        let mut total = CycNum::zero(1);
        for class in self.group.classes() {
            let rep = class[0];
            let members: Vec<usize> = block
                .elements
                .iter()
                .filter(|e| e.sector == rep)
                .map(|e| e.basis)
                .collect();
            if members.is_empty() {
                continue;
            }
            let cent = self.group.centralizer(rep);
            let mut trace = CycNum::zero(1);
            for &h in &cent {
                for &i in &members {
                    let (target, coords) = self.image(h, Element { sector: rep, basis: i });
                    debug_assert_eq!(target, rep);
                    if let Some((_, c)) = coords.iter().find(|(j, _)| *j == i) {
                        trace = &trace + c;
                    }
                }
            }
            total = &total + &(&trace * &CycNum::from_q(1, Q::new(1, cent.len() as i64)));
        }
        let r = total.as_rational().expect("character average is rational");
        assert!(r.is_integer(), "character average is an integer");
        usize::try_from(r.to_integer()).expect("non-negative dimension")
    }

    /// `[m]ξ_g`-style rendering of a block vector.
    pub fn format_vector(&self, b: usize, v: &[CycNum], names: &[String]) -> String {
        let mut parts = Vec::new();
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.blocks[b].elements[j];
            let term = self.format_element(e, names);
            if c.is_one() {
                parts.push(term);
            } else {
                parts.push(format!("({c})*{term}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn format_element(&self, e: Element, names: &[String]) -> String {
        let sec = &self.sectors[e.sector];
        let m = &sec.ring.basis[e.basis];
        format!("[{}]ξ_{{{}}}", m.display_with(&sec.coordinate_names(names)), sec.g)
    }

    pub fn sector_index(&self, g: &GroupElement) -> Option<usize> {
        self.group.index_of(g)
    }

    /// Block coordinates of `c·[m]ξ_g`, or `None` if the element is not a
    /// basis element.
    pub fn element_of(&self, g: &GroupElement, m: &Monomial) -> Option<(usize, usize)> {
        let s = self.group.index_of(g)?;
        let i = self.sectors[s].ring.index_of(m)?;
        Some(self.position[s][i])
    }

    pub fn jf_index(&self) -> Option<usize> {
        self.group.index_of(&make_jf(&self.weights))
    }
}

#[cfg(test)]
mod tests;
