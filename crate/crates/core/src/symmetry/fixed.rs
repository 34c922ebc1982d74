//! Fixed loci, restrictions `f^g`, and the transport data for `h: Fix(g) → Fix(hgh⁻¹)`.

use num_traits::Zero;

use super::GroupElement;
use crate::cyclotomic::CycNum;
use crate::linalg::{self, Field, Matrix};
use crate::polynomial::{Polynomial, WeightSystem};
use crate::rational::{frac, Q};

/// Eigenvector of a monomial matrix supported on one cycle: entry
/// `e[phi]` at each listed index, with `phi = 0` at the cycle's smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVector {
    pub theta: Q,
    pub entries: Vec<(usize, Q)>,
}

impl CycleVector {
    pub fn min_index(&self) -> usize {
        self.entries[0].0
    }

    pub fn phase_at(&self, i: usize) -> Option<Q> {
        self.entries.iter().find(|e| e.0 == i).map(|e| e.1)
    }
}

#[derive(Debug, Clone)]
pub struct FixedLocus {
    pub g: GroupElement,
    pub conductor: u32,
    /// `N × N_g`; column `j` is the fixed vector of the `j`-th fixed cycle,
    /// equal to 1 at that cycle's smallest index.
    pub l: Matrix<CycNum>,
    /// `N × d_g` complement eigenbasis, ordered by (cycle, ascending phase).
    pub w: Matrix<CycNum>,
    /// Smallest index of each fixed cycle; this plays the role of `I_g`.
    pub fixed_cycles: Vec<usize>,
    /// Eigenphases of the columns of `w`.
    pub complement_phases: Vec<Q>,
    /// Weights of the coordinates on `Fix(g)`.
    pub weights: Vec<Q>,
    /// `Σ_{k ∈ I_g^c} q_k`: total weight of the complement directions.
    pub sum_complement_q: Q,
    /// `det[W | L]`.
    pub volume: CycNum,
    /// Columns of `l` and `w` in phase form.
    pub fixed_vectors: Vec<CycleVector>,
    pub complement_vectors: Vec<CycleVector>,
}

impl FixedLocus {
    pub fn n_g(&self) -> usize {
        self.fixed_cycles.len()
    }

    pub fn d_g(&self) -> usize {
        self.g.n() - self.n_g()
    }

    /// Weight system of `f^g`, on the coordinates of `Fix(g)`.
    pub fn weight_system(&self) -> WeightSystem {
        WeightSystem::from_q(self.weights.clone())
    }
}

/// Eigenvector of `M_g` for eigenphase `theta` on `cycle`, normalized to 1
/// at `cycle[0]`.
fn cycle_eigenvector(g: &GroupElement, cycle: &[usize], theta: Q) -> CycleVector {
    let mut entries = Vec::with_capacity(cycle.len());
    let mut phi = Q::zero();
    for &i in cycle {
        entries.push((i, phi));
        // (M v)_i = e[α_i] v_{σ(i)} = e[θ] v_i
        phi = frac(phi + theta - g.phase()[i]);
    }
    CycleVector { theta, entries }
}

fn dense(v: &CycleVector, n: usize, conductor: u32) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(1); n];
    for &(i, phi) in &v.entries {
        out[i] = CycNum::root_of_unity(conductor, phi).expect("conductor covers eigenphases");
    }
    out
}

pub fn fixed_locus(g: &GroupElement, w: &WeightSystem, conductor: u32) -> FixedLocus {
    let n = g.n();
    let mut fixed_vectors = Vec::new();
    let mut complement_vectors = Vec::new();
    let mut weights = Vec::new();
    let mut sum_complement_q = w.sum();
    for (cycle, phases) in g.cycles().iter().zip(g.eigenphases()) {
        for theta in phases {
            let v = cycle_eigenvector(g, cycle, theta);
            if theta.is_zero() {
                weights.push(w.q[cycle[0]]);
                sum_complement_q -= w.q[cycle[0]];
                fixed_vectors.push(v);
            } else {
                complement_vectors.push(v);
            }
        }
    }
    let fixed_cols: Vec<Vec<CycNum>> = fixed_vectors.iter().map(|v| dense(v, n, conductor)).collect();
    let comp_cols: Vec<Vec<CycNum>> = complement_vectors
        .iter()
        .map(|v| dense(v, n, conductor))
        .collect();
    let l = cols_to_matrix(&fixed_cols, n);
    let wm = cols_to_matrix(&comp_cols, n);
    let full: Vec<Vec<CycNum>> = comp_cols.iter().chain(&fixed_cols).cloned().collect();
    let volume = linalg::det(&linalg::transpose(&full));
    FixedLocus {
        g: g.clone(),
        conductor,
        l,
        w: wm,
        fixed_cycles: fixed_vectors.iter().map(CycleVector::min_index).collect(),
        complement_phases: complement_vectors.iter().map(|v| v.theta).collect(),
        weights,
        sum_complement_q,
        volume,
        fixed_vectors,
        complement_vectors,
    }
}

fn cols_to_matrix(cols: &[Vec<CycNum>], n: usize) -> Matrix<CycNum> {
    (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// `f^g = f(L·y)`; the zero polynomial in 0 variables when `Fix(g) = 0`.
pub fn restrict(f: &Polynomial, fl: &FixedLocus) -> Polynomial {
    if fl.n_g() == 0 {
        return Polynomial::zero(0);
    }
    f.substitute_linear(&fl.l)
        .expect("fixed basis has one row per variable")
}

/// Matrix `T` with `M_h⁻¹·L_{g'} = L_g·T`, so a polynomial `p(y)` on
/// `Fix(g)` is carried to `p(T·y')` on `Fix(g')`, `g' = hgh⁻¹`.
pub fn transport(h: &GroupElement, from: &FixedLocus, to: &FixedLocus) -> Matrix<CycNum> {
    let hinv = h.inverse().matrix(from.conductor);
    let moved = linalg::mat_mul(&hinv, &to.l);
    from.fixed_cycles
        .iter()
        .map(|&i| moved[i].clone())
        .collect()
}

/// Determinant of `h: Λ(g) → Λ(hgh⁻¹)` in the chosen complement bases.
pub fn rho_between(h: &GroupElement, from: &FixedLocus, to: &FixedLocus) -> CycNum {
    let d = from.d_g();
    if d == 0 {
        return CycNum::one(1);
    }
    let mh = h.matrix(from.conductor);
    let image = linalg::mat_mul(&mh, &from.w);
    // coordinates of the image in the target's [W | L] basis
    let basis: Matrix<CycNum> = to
        .w
        .iter()
        .zip(&to.l)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    let coords = linalg::solve(&basis, &image).expect("eigenbasis is invertible");
    let r: Matrix<CycNum> = coords[..d].to_vec();
    debug_assert!(coords[d..].iter().flatten().all(Field::is_zero));
    linalg::det(&r)
}

/// Where `M_h` sends `v`: the target column among `targets` and the phase
/// `λ` with `M_h·v = e[λ]·target`.
fn push_forward(h: &GroupElement, v: &CycleVector, targets: &[CycleVector]) -> (usize, Q) {
    // (M_h v)_i = e[α_i] v_{σ(i)} is supported on σ⁻¹(support of v)
    let image: Vec<usize> = {
        let mut inv = vec![0; h.n()];
        for (i, &s) in h.sigma().iter().enumerate() {
            inv[s] = i;
        }
        v.entries.iter().map(|&(i, _)| inv[i]).collect()
    };
    let m = *image.iter().min().expect("nonempty cycle");
    let k = targets
        .iter()
        .position(|t| t.min_index() == m && t.theta == v.theta)
        .expect("h maps eigenvectors to eigenvectors");
    let phi = v.phase_at(h.sigma()[m]).expect("on the cycle");
    (k, frac(h.phase()[m] + phi))
}

/// `T` of [`transport`] in phase form: `y_j = e[φ_j]·y'_{k_j}`.
pub fn transport_phases(h: &GroupElement, from: &FixedLocus, to: &FixedLocus) -> Vec<(usize, Q)> {
    // M_h l_j = e[λ]·l'_k  gives  M_h⁻¹ l'_k = e[-λ]·l_j
    let mut out = vec![(0, Q::zero()); from.n_g()];
    for (j, v) in from.fixed_vectors.iter().enumerate() {
        let (k, lambda) = push_forward(h, v, &to.fixed_vectors);
        out[j] = (k, frac(-lambda));
    }
    out
}

/// [`rho_between`] without linear algebra, as `±e[θ]` in the form `(negative, θ)`.
pub fn rho_phase(h: &GroupElement, from: &FixedLocus, to: &FixedLocus) -> (bool, Q) {
    let mut perm = Vec::with_capacity(from.d_g());
    let mut total = Q::zero();
    for v in &from.complement_vectors {
        let (k, lambda) = push_forward(h, v, &to.complement_vectors);
        perm.push(k);
        total += lambda;
    }
    let mut seen = vec![false; perm.len()];
    let mut negative = false;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            negative = !negative;
        }
    }
    (negative, frac(total))
}

pub fn rho_constant(h: &GroupElement, g: &GroupElement, w: &WeightSystem, conductor: u32) -> CycNum {
    let from = fixed_locus(g, w, conductor);
    let to = fixed_locus(&h.conjugate(g), w, conductor);
    rho_between(h, &from, &to)
}
