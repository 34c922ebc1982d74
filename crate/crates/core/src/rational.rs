//! Small-rational helpers shared by the grading and group code.
//!
//! Weights, phases, ages and charges all have small denominators, so they
//! live in [`Q`] (`Ratio<i64>`). Field coefficients use `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

pub type Q = Rational64;

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - Q::from_integer(x.floor().to_integer())
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn to_big(x: Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Converts back to a small rational. Returns `None` on overflow.
pub fn from_big(x: &BigRational) -> Option<Q> {
    let n: i64 = x.numer().try_into().ok()?;
    let d: i64 = x.denom().try_into().ok()?;
    Some(Q::new(n, d))
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1u64, |acc, x| if x == 0 { acc } else { acc.lcm(&x) })
}

/// Renders `a/b` or `a` for integers.
pub fn fmt_q(x: Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_big(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn sum_q<'a, I: IntoIterator<Item = &'a Q>>(it: I) -> Q {
    it.into_iter().fold(Q::zero(), |acc, x| acc + *x)
}
