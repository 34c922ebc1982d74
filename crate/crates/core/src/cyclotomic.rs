//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are stored as rational coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(n)-1}`, always reduced modulo the cyclotomic polynomial
//! `Φ_n`. One conductor is chosen per computation; rational elements (those
//! with only a constant coefficient) mix freely with any conductor.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_big, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
}

/// Shared data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    phi: usize,
    /// Coefficients of `Φ_n`, lowest degree first, monic.
    modulus: Vec<BigInt>,
    /// `ζ^k` reduced, for `k` in `0..n`.
    powers: Vec<Vec<BigRational>>,
}

impl CyclotomicField {
    fn new(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(n);
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * BigRational::from_integer(modulus[i].clone());
                }
            }
        }
        CyclotomicField {
            n,
            phi,
            modulus,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Returns the (cached) field of conductor `n`.
pub fn field(n: u32) -> Arc<CyclotomicField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("field cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(CyclotomicField::new(n)))
        .clone()
}

/// `Φ_n` via `x^n - 1 = Π_{d | n} Φ_d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &den);
        }
    }
    num
}

fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = &den[dl - 1];
    let mut quo = vec![BigInt::zero(); num.len() + 1 - dl];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + dl - 1] / lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let f = field(n);
        let coeffs = vec![BigRational::zero(); f.phi];
        CycNum { field: f, coeffs }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u32, r: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_q(n: u32, x: Q) -> Self {
        Self::from_rational(n, crate::rational::to_big(x))
    }

    /// `e[alpha] = exp(2πi·alpha)`; the denominator of `alpha` must divide `n`.
    pub fn root_of_unity(n: u32, alpha: Q) -> Result<Self, CycError> {
        let scaled = alpha * Q::from_integer(n as i64);
        if !scaled.is_integer() {
            return Err(CycError::ConductorMismatch(n, *alpha.denom() as u32));
        }
        let k = scaled.to_integer().rem_euclid(n as i64) as usize;
        let f = field(n);
        let coeffs = f.powers[k].clone();
        Ok(CycNum { field: f, coeffs })
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let coeffs = f.powers[idx].clone();
        CycNum { field: f, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self, CycError> {
        let n = self.conductor();
        if m == n {
            return Ok(self.clone());
        }
        if self.is_rational() {
            return Ok(Self::from_rational(m, self.coeffs[0].clone()));
        }
        if !m.is_multiple_of(n) {
            return Err(CycError::ConductorMismatch(n, m));
        }
        let step = (m / n) as i64;
        let mut out = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = Self::zeta_pow(m, step * i as i64);
            for (o, zc) in out.coeffs.iter_mut().zip(z.coeffs.iter()) {
                *o += c * zc;
            }
        }
        Ok(out)
    }

    /// Picks the common field of two operands.
    fn common(&self, other: &Self) -> Result<Arc<CyclotomicField>, CycError> {
        if Arc::ptr_eq(&self.field, &other.field)
            || self.field.n == other.field.n
            || other.is_rational()
        {
            Ok(self.field.clone())
        } else if self.is_rational() {
            Ok(other.field.clone())
        } else {
            Err(CycError::ConductorMismatch(self.field.n, other.field.n))
        }
    }

    fn coerce(&self, f: &Arc<CyclotomicField>) -> Vec<BigRational> {
        if self.field.n == f.n {
            self.coeffs.clone()
        } else {
            let mut v = vec![BigRational::zero(); f.phi];
            v[0] = self.coeffs[0].clone();
            v
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        let f = self.common(other)?;
        let mut a = self.coerce(&f);
        if other.field.n == f.n {
            for (x, y) in a.iter_mut().zip(other.coeffs.iter()) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        } else {
            a[0] += &other.coeffs[0];
        }
        Ok(CycNum { field: f, coeffs: a })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        let f = self.common(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum {
                coeffs: vec![BigRational::zero(); f.phi],
                field: f,
            });
        }
        if other.is_rational() {
            let r = &other.coeffs[0];
            let coeffs = self.coerce(&f).into_iter().map(|c| c * r).collect();
            return Ok(CycNum { field: f, coeffs });
        }
        if self.is_rational() {
            let r = &self.coeffs[0];
            let coeffs = other.coerce(&f).into_iter().map(|c| c * r).collect();
            return Ok(CycNum { field: f, coeffs });
        }
        let phi = f.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut out: Vec<BigRational> = prod[..phi].to_vec();
        let n = f.n as usize;
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(f.powers[k % n].iter()) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(CycNum {
            field: f,
            coeffs: out,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.is_rational() {
            let r = self.coeffs[0].recip();
            return Ok(Self::from_rational(self.conductor(), r));
        }
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if let [k] = nonzero[..] {
            // c·ζ^k
            let n = self.conductor();
            let c = self.coeffs[k].recip();
            return Ok(&Self::zeta_pow(n, -(k as i64)) * &Self::from_rational(n, c));
        }
        let f = self.field.clone();
        let modulus: Vec<BigRational> = f
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        let (g, s) = ext_gcd(&a, &modulus);
        // Φ_n is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let mut coeffs = vec![BigRational::zero(); f.phi];
        for (i, c) in s.into_iter().enumerate() {
            coeffs[i] = c * &ginv;
        }
        Ok(CycNum { field: f, coeffs })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
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

    /// If the element is a root of unity `e[k/n]`, returns `k/n` in `[0,1)`.
    pub fn as_root_of_unity(&self) -> Option<Q> {
        let n = self.conductor();
        (0..n).find_map(|k| {
            let z = &self.field.powers[k as usize];
            (z == &self.coeffs).then(|| Q::new(k as i64, n as i64))
        })
    }
}

/// Binary field operation with an explicit error on conductor mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

pub fn field_arith(a: &CycNum, b: &CycNum, op: FieldOp) -> Result<CycNum, CycError> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut quo = vec![BigRational::zero(); r.len() + 1 - b.len()];
    for i in (0..quo.len()).rev() {
        let c = &r[i + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        quo[i] = c;
    }
    (trim(quo), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn is_zero_poly(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`.
fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero_poly(&r1) {
        let (q, mut r) = poly_divrem(&r0, &r1);
        let mut s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        // monic remainders keep coefficient growth in check
        if !is_zero_poly(&r) {
            let lead = r.last().unwrap().recip();
            r.iter_mut().for_each(|c| *c *= &lead);
            s2.iter_mut().for_each(|c| *c *= &lead);
        }
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            self.coeffs == other.coeffs
        } else {
            self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0]
        }
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_rational() {
            1u32.hash(state);
            self.coeffs[0].hash(state);
        } else {
            self.field.n.hash(state);
            self.coeffs.hash(state);
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<{}>({})", self.conductor(), self)
    }
}

/// Prints as a sum of rational multiples of `e[k/n]`, e.g. `1/2 - 1/2*e[1/4]`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor() as i64;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", fmt_big(&abs))?;
            } else {
                let r = Q::new(i as i64, n);
                let root = format!("e[{}/{}]", r.numer(), r.denom());
                if abs.is_one() {
                    write!(f, "{root}")?;
                } else {
                    write!(f, "{}*{root}", fmt_big(&abs))?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic operands must share a conductor")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.field.n == rhs.field.n {
            for (x, y) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.field.n == rhs.field.n {
            for (x, y) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                if !y.is_zero() {
                    *x -= y;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn e(n: u32, a: i64, b: i64) -> CycNum {
        CycNum::root_of_unity(n, q(a, b)).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        let to_i: fn(Vec<BigInt>) -> Vec<i64> =
            |v| v.into_iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(to_i(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(30).len() - 1, 8);
    }

    #[test]
    fn half_turn_is_minus_one() {
        assert_eq!(e(12, 1, 2), CycNum::from_int(12, -1));
        assert_eq!(e(2, 1, 2), CycNum::from_int(1, -1));
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        let s = &e(3, 1, 3) + &e(3, 2, 3);
        assert_eq!(s, CycNum::from_int(3, -1));
    }

    #[test]
    fn exponents_add() {
        let i = e(4, 1, 4);
        assert_eq!(&i * &i, e(4, 1, 2));
        assert_eq!(&e(12, 1, 12) * &e(12, 11, 12), CycNum::one(12));
    }

    #[test]
    fn additive_identity() {
        let z = e(5, 1, 5);
        assert_eq!(&z + &CycNum::zero(5), z);
    }

    #[test]
    fn product_of_shifted_cube_roots() {
        let one = CycNum::one(3);
        let a = &one + &e(3, 1, 3);
        let b = &one + &e(3, 2, 3);
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn conductor_mismatch_is_reported() {
        assert_eq!(
            CycNum::root_of_unity(4, q(1, 3)).unwrap_err(),
            CycError::ConductorMismatch(4, 3)
        );
        let err = field_arith(&e(3, 1, 3), &e(4, 1, 4), FieldOp::Add).unwrap_err();
        assert_eq!(err, CycError::ConductorMismatch(3, 4));
    }

    #[test]
    fn inverses() {
        let two = CycNum::from_int(7, 2);
        assert_eq!(
            two.inv().unwrap(),
            CycNum::from_rational(7, BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(e(6, 1, 6).inv().unwrap(), e(6, 5, 6));
        let i = e(4, 1, 4);
        let a = &CycNum::one(4) + &i;
        let expected = &(&CycNum::one(4) - &i) * &CycNum::from_q(4, q(1, 2));
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(CycNum::zero(5).inv().unwrap_err(), CycError::DivisionByZero);
    }

    #[test]
    fn root_of_unity_order() {
        // e[a/b] has multiplicative order b
        for (a, b) in [(1, 12), (5, 12), (2, 5), (3, 10)] {
            let z = e(60, a, b);
            for k in 1..b {
                assert!(!z.pow(k as u32).is_one());
            }
            assert!(z.pow(b as u32).is_one());
        }
        assert!(e(30, 0, 1).is_one());
        assert!(e(30, 3, 1).is_one());
    }

    #[test]
    fn lift_preserves_value() {
        let z = e(3, 1, 3);
        let lifted = z.lift(12).unwrap();
        assert_eq!(lifted, e(12, 1, 3));
        assert!(e(4, 1, 4).lift(6).is_err());
    }

    #[test]
    fn display_round() {
        let i = e(4, 1, 4);
        let a = &CycNum::from_q(4, q(1, 2)) - &(&i * &CycNum::from_q(4, q(1, 2)));
        assert_eq!(a.to_string(), "1/2 - 1/2*e[1/4]");
        assert_eq!(e(12, 1, 2).to_string(), "-1");
        assert_eq!(e(12, 1, 2).as_rational().unwrap(), BigRational::from_integer((-1).into()));
        assert_eq!(e(12, 1, 12).as_root_of_unity(), Some(q(1, 12)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(n: u32, raw: &[(i64, i64)]) -> CycNum {
            raw.iter().fold(CycNum::zero(n), |acc, &(c, k)| {
                &acc + &(&CycNum::zeta_pow(n, k) * &CycNum::from_int(n, c))
            })
        }

        fn arb_pair() -> impl Strategy<Value = (u32, Vec<(i64, i64)>, Vec<(i64, i64)>)> {
            (1u32..=60).prop_flat_map(|n| {
                let terms = prop::collection::vec((-5i64..6, 0i64..n as i64), 0..5);
                (Just(n), terms.clone(), terms)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn multiply_then_divide((n, a, b) in arb_pair()) {
                let (a, b) = (element(n, &a), element(n, &b));
                if !b.is_zero() {
                    let back = (&a * &b).checked_div(&b).unwrap();
                    prop_assert_eq!(back, a);
                }
            }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn field_axioms((n, a, b) in arb_pair(), c in prop::collection::vec((-5i64..6, 0i64..60), 0..4)) {
                let (a, b, c) = (element(n, &a), element(n, &b), element(n, &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a - &a, CycNum::zero(n));
                if !a.is_zero() {
                    prop_assert!((&a * &a.inv().unwrap()).is_one());
                }
                prop_assert!(a.coeffs().len() == field(n).degree());
            }

            #[test]
            fn roots_multiply(n in 1u32..=60, x in 0i64..120, y in 0i64..120) {
                let a = Q::new(x, n as i64);
                let b = Q::new(y, n as i64);
                let za = CycNum::root_of_unity(n, a).unwrap();
                let zb = CycNum::root_of_unity(n, b).unwrap();
                let sum = crate::rational::frac(a + b);
                prop_assert_eq!(&za * &zb, CycNum::root_of_unity(n, sum).unwrap());
                prop_assert_eq!(za.is_one(), a.is_integer());
            }
        }
    }
}
