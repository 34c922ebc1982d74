//! Jacobian algebras `C[x]/(∂f)` with their grading, Hessian class and residue pairing.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::groebner::{groebner, GroebnerBasis};
use super::JacobianError;
use crate::cyclotomic::CycNum;
use crate::polynomial::{Monomial, Polynomial, WeightSystem};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct JacobianRing {
    pub f: Polynomial,
    pub weights: WeightSystem,
    pub gb: GroebnerBasis,
    /// Standard monomials, by ascending weighted degree then monomial order.
    pub basis: Vec<Monomial>,
    pub degrees: Vec<Q>,
    index: HashMap<Monomial, usize>,
    pub c_hat: Q,
    /// Normal form of `hess(f)`, a multiple of the single top monomial.
    pub hess_class: Polynomial,
    pub top: Monomial,
    pub hess_coeff: CycNum,
}

/// Enumerates exponent vectors in the box `e_i < bound_i`.
fn box_monomials(bounds: &[u32]) -> Vec<Monomial> {
    let mut out = vec![Vec::<u32>::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..b).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial).collect()
}

pub fn quotient_ring(f: &Polynomial, w: &WeightSystem) -> Result<JacobianRing, JacobianError> {
    let n = f.nvars();
    if n == 0 {
        let one = Polynomial::one(0);
        return Ok(JacobianRing {
            f: f.clone(),
            weights: w.clone(),
            gb: groebner(&[]),
            basis: vec![Monomial::one(0)],
            degrees: vec![Q::zero()],
            index: HashMap::from([(Monomial::one(0), 0)]),
            c_hat: Q::zero(),
            hess_class: one,
            top: Monomial::one(0),
            hess_coeff: CycNum::one(1),
        });
    }
    let partials: Vec<Polynomial> = (0..n).map(|i| f.partial_derivative(i)).collect();
    let gb = groebner(&partials);
    let mut bounds = vec![0u32; n];
    for m in gb.leading_monomials() {
        let support: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
        if let [i] = support[..] {
            if bounds[i] == 0 || m.exps()[i] < bounds[i] {
                bounds[i] = m.exps()[i];
            }
        }
    }
    if let Some(i) = bounds.iter().position(|&b| b == 0) {
        return Err(JacobianError::NotIsolated { variable: i + 1 });
    }
    let mut basis: Vec<Monomial> = box_monomials(&bounds)
        .into_iter()
        .filter(|m| gb.is_standard(m))
        .collect();
    basis.sort_by(|a, b| {
        a.weighted_degree(&w.q)
            .cmp(&b.weighted_degree(&w.q))
            .then_with(|| a.cmp(b))
    });
    let degrees: Vec<Q> = basis.iter().map(|m| m.weighted_degree(&w.q)).collect();
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let c_hat = w.c_hat();
    let hess_class = gb.normal_form(&f.hessian());
    let (top, hess_coeff) = {
        let mut hterms = hess_class.terms();
        match (hterms.next(), hterms.next()) {
            (Some((m, c)), None) if m.weighted_degree(&w.q) == c_hat => (m.clone(), c.clone()),
            _ => return Err(JacobianError::HessianClass(hess_class.to_string())),
        }
    };
    Ok(JacobianRing {
        f: f.clone(),
        weights: w.clone(),
        gb,
        basis,
        degrees,
        index,
        c_hat,
        hess_class,
        top,
        hess_coeff,
    })
}

impl JacobianRing {
    pub fn mu(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        if self.nvars() == 0 {
            return p.clone();
        }
        self.gb.normal_form(p)
    }

    /// Coordinates of `[p]` in `basis`, as sparse (index, coefficient) pairs.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<(usize, CycNum)> {
        let r = self.normal_form(p);
        let mut out: Vec<(usize, CycNum)> = r
            .terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        out.sort_by_key(|x| x.0);
        out
    }

    pub fn graded_dimensions(&self) -> BTreeMap<Q, usize> {
        let mut out = BTreeMap::new();
        for d in &self.degrees {
            *out.entry(*d).or_insert(0) += 1;
        }
        out
    }

    /// Basis indices of weighted degree `d`.
    pub fn indices_of_degree(&self, d: Q) -> Vec<usize> {
        (0..self.mu()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// `η([u], [v])`, normalized by `η([1], [hess f]) = 1`.
    pub fn residue_pairing(&self, u: &Polynomial, v: &Polynomial) -> CycNum {
        let r = self.normal_form(&(u * v));
        let c = r.coeff(&self.top);
        if c.is_zero() {
            return c;
        }
        &c * &self.hess_coeff.inv().expect("hessian class is nonzero")
    }

    pub fn basis_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.basis[i].clone(), CycNum::one(1))
    }
}

/// Memo of rings keyed by `(f, weights)`.
#[derive(Debug, Default)]
pub struct RingCache {
    map: Mutex<HashMap<(Polynomial, WeightSystem), Arc<JacobianRing>>>,
}

impl RingCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, f: &Polynomial, w: &WeightSystem) -> Result<Arc<JacobianRing>, JacobianError> {
        let key = (f.clone(), w.clone());
        if let Some(r) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let ring = Arc::new(quotient_ring(f, w)?);
        let mut map = self.map.lock().expect("cache lock");
        Ok(map.entry(key).or_insert(ring).clone())
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Coefficients of `Π (t^{d0-d_k} - 1)/(t^{d_k} - 1)`, indexed by degree `j/d0`.
pub fn poincare_oracle(w: &WeightSystem) -> BTreeMap<Q, usize> {
    let d0 = w.d0;
    let mut num: Vec<i128> = vec![1];
    for &dk in &w.d {
        num = mul_binomial(&num, (d0 - dk) as usize);
    }
    for &dk in &w.d {
        num = div_binomial(&num, dk as usize);
    }
    num.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| {
            (
                Q::new(j as i64, d0),
                usize::try_from(c).expect("coefficients are non-negative"),
            )
        })
        .collect()
}

/// `p · (t^a - 1)`.
fn mul_binomial(p: &[i128], a: usize) -> Vec<i128> {
    let mut out = vec![0; p.len() + a];
    for (i, &c) in p.iter().enumerate() {
        out[i + a] += c;
        out[i] -= c;
    }
    out
}

/// Exact quotient `p / (t^a - 1)`.
fn div_binomial(p: &[i128], a: usize) -> Vec<i128> {
    let mut rem = p.to_vec();
    let deg = rem.len() - 1;
    let mut q = vec![0; deg + 1 - a];
    for i in (a..=deg).rev() {
        let c = rem[i];
        if c != 0 {
            q[i - a] = c;
            rem[i] = 0;
            rem[i - a] += c;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division is exact");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{default_names, parse_expr, parse_poly};
    use crate::quasihom::analyze;
    use crate::rational::q;

    fn setup(s: &str, n: usize) -> (Polynomial, WeightSystem) {
        let f = parse_poly(s, &default_names(n)).unwrap();
        let w = analyze(&f).unwrap().weights;
        (f, w)
    }

    fn ring(s: &str, n: usize) -> JacobianRing {
        let (f, w) = setup(s, n);
        quotient_ring(&f, &w).unwrap()
    }

    #[test]
    fn two_cubes() {
        let r = ring("x1^3 + x2^3", 2);
        assert_eq!(r.mu(), 4);
        let names: Vec<String> = r.basis.iter().map(|m| m.display_with(&default_names(2))).collect();
        assert_eq!(names, ["1", "x2", "x1", "x1*x2"]);
        assert_eq!(r.c_hat, q(2, 3));
        assert_eq!(r.graded_dimensions(), poincare_oracle(&r.weights));
    }

    #[test]
    fn quintic() {
        let r = ring("x1^5+x2^5+x3^5+x4^5+x5^5", 5);
        assert_eq!(r.mu(), 1024);
        let dims = r.graded_dimensions();
        assert_eq!(dims[&q(1, 1)], 101);
        assert_eq!(dims[&q(3, 1)], 1);
        assert_eq!(*dims.keys().last().unwrap(), q(3, 1));
        assert_eq!(dims, poincare_oracle(&r.weights));
    }

    #[test]
    fn main_example() {
        let r = ring("x1^2*x2 + x2^2 + x2*x3^6 + x4^6 + x1*x3^9", 4);
        assert_eq!(r.mu(), 165);
        assert_eq!(r.graded_dimensions(), poincare_oracle(&r.weights));
        assert_eq!(r.graded_dimensions()[&r.c_hat], 1);
    }

    #[test]
    fn star_shaped_81() {
        let r = ring("x1^4 + x1*(x2^3 + x3^3 + x4^3) + x2^2*x3^2 + x2^2*x4^2 + x3^2*x4^2", 4);
        assert_eq!(r.mu(), 81);
    }

    #[test]
    fn fermat_cube() {
        let r = ring("x1^3", 1);
        assert_eq!(r.graded_dimensions(), BTreeMap::from([(q(0, 1), 1), (q(1, 3), 1)]));
        assert_eq!(poincare_oracle(&r.weights), r.graded_dimensions());
        let x = parse_expr("x1", &default_names(1)).unwrap();
        let one = Polynomial::one(1);
        assert_eq!(r.residue_pairing(&x, &one), CycNum::from_q(1, q(1, 6)));
        assert!(r.residue_pairing(&one, &r.f.hessian()).is_one());
    }

    #[test]
    fn pairing_degree_mismatch() {
        let r = ring("x1^3 + x2^3", 2);
        let one = Polynomial::one(2);
        assert!(r.residue_pairing(&one, &one).is_zero());
        assert!(r.residue_pairing(&one, &r.f.hessian()).is_one());
    }

    #[test]
    fn zero_polynomial_ring() {
        let w = WeightSystem::from_q(vec![]);
        let r = quotient_ring(&Polynomial::zero(0), &w).unwrap();
        assert_eq!(r.mu(), 1);
        assert_eq!(r.c_hat, Q::zero());
        assert!(r.hess_coeff.is_one());
    }

    #[test]
    fn not_isolated() {
        // epsilon = 0 in x1^3 + x2^3 + x3^3 + eps*x1*x2*x3 is fine; a cone is not
        let f = parse_expr("x1^2*x2", &default_names(2)).unwrap();
        let w = WeightSystem::from_q(vec![q(1, 3), q(1, 3)]);
        assert_eq!(
            quotient_ring(&f, &w).unwrap_err(),
            JacobianError::NotIsolated { variable: 2 }
        );
    }

    #[test]
    fn gram_matrices_are_nondegenerate() {
        let r = ring("x1^3 + x1*x2^2 + x3^4", 3);
        for &d in r.graded_dimensions().keys() {
            let a = r.indices_of_degree(d);
            let b = r.indices_of_degree(r.c_hat - d);
            assert_eq!(a.len(), b.len());
            let gram: Vec<Vec<CycNum>> = a
                .iter()
                .map(|&i| {
                    b.iter()
                        .map(|&j| r.residue_pairing(&r.basis_polynomial(i), &r.basis_polynomial(j)))
                        .collect()
                })
                .collect();
            assert_eq!(crate::linalg::rank(&gram), a.len());
        }
    }

    #[test]
    fn cache_shares_rings() {
        let (f, w) = setup("x1^3 + x2^3", 2);
        let cache = RingCache::new();
        let a = cache.get(&f, &w).unwrap();
        let b = cache.get(&f, &w).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }

    fn invertible() -> impl proptest::strategy::Strategy<Value = (String, usize)> {
        use proptest::prelude::*;
        prop_oneof![
            (2u32..7, 2u32..6).prop_map(|(a, b)| (format!("x1^{a} + x2^{b}"), 2)),
            (2u32..6, 2u32..6).prop_map(|(a, b)| (format!("x1^{a}*x2 + x2^{b}"), 2)),
            (2u32..6, 2u32..6).prop_map(|(a, b)| (format!("x1^{a}*x2 + x2^{b}*x1"), 2)),
            (2u32..4, 2u32..4, 2u32..4)
                .prop_map(|(a, b, c)| (format!("x1^{a}*x2 + x2^{b}*x3 + x3^{c}"), 3)),
            (2u32..4, 2u32..4, 2u32..4)
                .prop_map(|(a, b, c)| (format!("x1^{a}*x2 + x2^{b}*x3 + x3^{c}*x1"), 3)),
            (2u32..4, 2u32..4, 2u32..4, 2u32..4)
                .prop_map(|(a, b, c, d)| (format!("x1^{a} + x2^{b}*x3 + x3^{c}*x2 + x4^{d}"), 4)),
        ]
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

        #[test]
        fn graded_dims_match_oracle((s, n) in invertible()) {
            let (f, w) = setup(&s, n);
            let r = quotient_ring(&f, &w).unwrap();
            proptest::prop_assert_eq!(r.graded_dimensions(), poincare_oracle(&w));
            proptest::prop_assert_eq!(r.graded_dimensions()[&r.c_hat], 1);
            // renumbering and rescaling leave mu unchanged
            let perm: Vec<usize> = (0..n).rev().collect();
            let g = f.permute_variables(&perm);
            let wq: Vec<Q> = perm.iter().map(|&i| w.q[i]).collect();
            let mut scale = crate::linalg::identity::<CycNum>(n);
            scale[0][0] = CycNum::from_int(1, 3);
            let h = g.substitute_linear(&scale).unwrap();
            let w2 = WeightSystem::from_q(wq);
            proptest::prop_assert_eq!(quotient_ring(&h, &w2).unwrap().mu(), r.mu());
        }
    }
}
