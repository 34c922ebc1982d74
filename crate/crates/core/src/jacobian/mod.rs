//! Jacobian (Milnor) algebras over cyclotomic fields.

mod groebner;
mod ring;

pub use groebner::{grevlex_cmp, groebner, GroebnerBasis, Grevlex};
pub use ring::{poincare_oracle, quotient_ring, JacobianRing, RingCache};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobianError {
    #[error("singularity is not isolated: no leading term is a pure power of x{variable}")]
    NotIsolated { variable: usize },
    #[error("hessian does not reduce to a single top-degree monomial: {0}")]
    HessianClass(String),
}
