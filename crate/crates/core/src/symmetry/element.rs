//! Monomial matrices `M[i, σ(i)] = e[α_i]`.

use std::fmt;

use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::linalg::{self, Matrix};
use crate::polynomial::{Monomial, Polynomial};
use crate::rational::{fmt_q, frac, lcm_all, Q};

/// Acts on coordinates by `x_i ↦ e[α_i]·x_{σ(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    sigma: Vec<usize>,
    phase: Vec<Q>,
}

impl GroupElement {
    /// Phases are reduced into `[0, 1)`.
    pub fn new(sigma: Vec<usize>, phase: Vec<Q>) -> Self {
        assert_eq!(sigma.len(), phase.len(), "sigma and phase lengths");
        let mut seen = vec![false; sigma.len()];
        for &s in &sigma {
            assert!(s < sigma.len() && !seen[s], "sigma must be a permutation");
            seen[s] = true;
        }
        GroupElement {
            sigma,
            phase: phase.into_iter().map(frac).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            sigma: (0..n).collect(),
            phase: vec![Q::zero(); n],
        }
    }

    pub fn diagonal(phase: Vec<Q>) -> Self {
        let n = phase.len();
        Self::new((0..n).collect(), phase)
    }

    /// Product of the given cycles (0-based), each `c_0 → c_1 → … → c_0`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        for c in cycles {
            for k in 0..c.len() {
                sigma[c[k]] = c[(k + 1) % c.len()];
            }
        }
        Self::new(sigma, vec![Q::zero(); n])
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn phase(&self) -> &[Q] {
        &self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.phase.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Matrix product `M_self · M_other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut phase = vec![Q::zero(); n];
        for i in 0..n {
            let j = self.sigma[i];
            sigma[i] = other.sigma[j];
            phase[i] = self.phase[i] + other.phase[j];
        }
        Self::new(sigma, phase)
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut phase = vec![Q::zero(); n];
        for i in 0..n {
            sigma[self.sigma[i]] = i;
            phase[self.sigma[i]] = -self.phase[i];
        }
        Self::new(sigma, phase)
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &Self) -> Self {
        self.compose(g).compose(&self.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.n());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Cycles of `σ`, ordered by smallest element, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = self.sigma[s];
            while i != s {
                seen[i] = true;
                c.push(i);
                i = self.sigma[i];
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_phase(&self, cycle: &[usize]) -> Q {
        cycle.iter().fold(Q::zero(), |a, &i| a + self.phase[i])
    }

    pub fn order(&self) -> u64 {
        lcm_all(
            self.cycles()
                .iter()
                .map(|c| c.len() as u64 * *self.cycle_phase(c).denom() as u64),
        )
    }

    /// Lcm of every denominator that appears in the matrix or its eigen-data.
    pub fn conductor(&self) -> u64 {
        lcm_all(
            self.phase
                .iter()
                .map(|a| *a.denom() as u64)
                .chain(std::iter::once(self.order())),
        )
    }

    pub fn sign(&self) -> i64 {
        let odd = self
            .cycles()
            .iter()
            .filter(|c| c.len() % 2 == 0)
            .count()
            % 2;
        if odd == 1 {
            -1
        } else {
            1
        }
    }

    /// `det = e[θ]`, returns `θ` in `[0, 1)`.
    pub fn det_phase(&self) -> Q {
        let s = self.phase.iter().fold(Q::zero(), |a, x| a + x);
        let sign = if self.sign() < 0 { Q::new(1, 2) } else { Q::zero() };
        frac(s + sign)
    }

    pub fn determinant(&self) -> CycNum {
        let t = self.det_phase();
        CycNum::root_of_unity(*t.denom() as u32, t).expect("denominator divides itself")
    }

    pub fn is_sl(&self) -> bool {
        self.det_phase().is_zero()
    }

    /// Eigenvalue phases in `[0, 1)`, grouped by cycle in `cycles()` order
    /// and ascending within a cycle.
    pub fn eigenphases(&self) -> Vec<Vec<Q>> {
        self.cycles()
            .iter()
            .map(|c| {
                let l = c.len() as i64;
                let a = self.cycle_phase(c);
                let mut v: Vec<Q> = (0..l)
                    .map(|m| frac((a + Q::from_integer(m)) / Q::from_integer(l)))
                    .collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn age(&self) -> Q {
        self.eigenphases()
            .iter()
            .flatten()
            .fold(Q::zero(), |a, x| a + x)
    }

    /// Dimension of the fixed locus.
    pub fn fixed_dim(&self) -> usize {
        self.cycles()
            .iter()
            .filter(|c| self.cycle_phase(c).is_integer())
            .count()
    }

    pub fn matrix(&self, conductor: u32) -> Matrix<CycNum> {
        let n = self.n();
        let mut m: Matrix<CycNum> = linalg::zeros(n, n);
        for i in 0..n {
            m[i][self.sigma[i]] = CycNum::root_of_unity(conductor, self.phase[i])
                .expect("conductor covers the element");
        }
        m
    }

    /// `p(M·x)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let n = self.n();
        let mut out = Polynomial::zero(n);
        for (m, c) in p.terms() {
            let mut e = vec![0u32; n];
            let mut ph = Q::zero();
            for (i, &a) in m.exps().iter().enumerate() {
                e[self.sigma[i]] += a;
                ph += self.phase[i] * Q::from_integer(a as i64);
            }
            let ph = frac(ph);
            let cond = lcm_all([*ph.denom() as u64, c.conductor() as u64]) as u32;
            let z = CycNum::root_of_unity(cond, ph).expect("lcm conductor");
            let c = c.lift(cond).expect("lcm conductor");
            out.add_term(Monomial(e), &c * &z);
        }
        out
    }
}

/// `diag(α)*perm(c)*perm(c')…`, 1-based; `id` for the identity.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut parts = Vec::new();
        if self.phase.iter().any(|x| !x.is_zero()) {
            let ph: Vec<String> = self.phase.iter().map(|&x| fmt_q(x)).collect();
            parts.push(format!("diag({})", ph.join(",")));
        }
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            parts.push(format!("perm({})", s.join(" ")));
        }
        write!(f, "{}", parts.join("*"))
    }
}
