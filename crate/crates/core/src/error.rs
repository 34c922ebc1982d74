//! Crate-wide error type.

use crate::cyclotomic::CycError;
use crate::jacobian::JacobianError;
use crate::polynomial::PolyError;
use crate::quasihom::QuasihomError;
use crate::statespace::StateSpaceError;
use crate::symmetry::SymmetryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quasihom(#[from] QuasihomError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    StateSpace(#[from] StateSpaceError),
}
