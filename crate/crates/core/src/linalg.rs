//! Dense exact linear algebra over a field.
//!
//! Used with [`CycNum`] for sector maps and invariant extraction, and with
//! `BigRational` for the exponent matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::CycNum;

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on zero; callers only invert chosen pivots.
    fn inv(&self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Constants live at conductor 1 and promote on contact.
impl Field for CycNum {
    fn zero() -> Self {
        CycNum::zero(1)
    }
    fn one() -> Self {
        CycNum::one(1)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        CycNum::inv(self).expect("pivot is nonzero")
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn ncols<F>(m: &Matrix<F>) -> usize {
    m.first().map_or(0, Vec::len)
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let (n, k, m) = (a.len(), b.len(), ncols(b));
    let mut out: Matrix<F> = zeros(n, m);
    for i in 0..n {
        for t in 0..k {
            let x = &a[i][t];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] = out[i][j].add(&x.mul(&b[t][j]));
                }
            }
        }
    }
    out
}

pub fn transpose<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    let (n, m) = (a.len(), ncols(a));
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_vec<F: Field>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::zero(), |acc, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc.add(&x.mul(y))
                }
            })
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = ncols(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if inv != F::one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the row space, in reduced echelon form.
pub fn row_space<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let mut a = m.clone();
    let k = rref(&mut a).len();
    a.truncate(k);
    a
}

/// Basis of the column space, returned as column vectors.
pub fn column_space<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    row_space(&transpose(m))
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `A·X = B` for square invertible `A`.
pub fn solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    Some(mat_mul(&inverse(a)?, b))
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = acc.neg();
        }
        acc = acc.mul(&a[c][c]);
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].mul(&inv);
            for j in c..n {
                if !a[c][j].is_zero() {
                    let t = factor.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
    }
    acc
}

pub fn int_to_big(m: &[Vec<i64>]) -> Matrix<BigRational> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn inverse_and_det() {
        let m = int_to_big(&[vec![2, 1], vec![0, 3]]);
        assert_eq!(det(&m), b(6));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        let sing = int_to_big(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&sing).is_none());
        assert_eq!(rank(&sing), 1);
    }

    #[test]
    fn det_with_row_swap() {
        let m = int_to_big(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(det(&m), b(-1));
    }

    #[test]
    fn column_space_of_projection() {
        let m = int_to_big(&[vec![1, 1], vec![0, 0]]);
        let cs = column_space(&m);
        assert_eq!(cs, vec![vec![b(1), b(0)]]);
    }

    #[test]
    fn cyclotomic_rank() {
        let i = CycNum::root_of_unity(4, crate::rational::q(1, 4)).unwrap();
        let one = CycNum::one(4);
        // rows (1, i) and (i, -1) are dependent
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]];
        assert_eq!(rank(&m), 1);
    }
}
