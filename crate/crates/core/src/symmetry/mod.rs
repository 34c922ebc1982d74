//! Monomial symmetry groups of a polynomial.

mod diagonal;
mod element;
mod fixed;
mod group;

pub use diagonal::{
    age_via_matrix, diagonal_symmetries, graph_symmetries, greedy_generators, krawitz_generators,
    make_jf, solve_phase_lattice, DiagonalGroup,
};
pub use element::GroupElement;
pub use fixed::{
    fixed_locus, restrict, rho_between, rho_constant, rho_phase, transport, transport_phases,
    CycleVector, FixedLocus,
};
pub use group::{generate_group, ClosureOptions, FiniteGroup, DEFAULT_CLOSURE_CAP};

use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("{0} is not a symmetry of f")]
    NotASymmetry(String),
    #[error("{0} permutes variables of different weights; a symmetry necessarily preserves the weights of the variables")]
    NotWeightPreserving(String),
    #[error("group closure exceeded {0} elements")]
    ClosureCapExceeded(usize),
    #[error("group does not contain j_f")]
    MissingJ,
    #[error("{0} is not in SL (determinant is not 1)")]
    NotInSL(String),
    #[error("vector is not in the graph symmetry group (E*g is not integral)")]
    NotInGraphGroup,
    #[error("diagonal symmetry group is infinite")]
    InfiniteDiagonalGroup,
    #[error("group element acts on {found} variables, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

pub fn is_symmetry(f: &Polynomial, g: &GroupElement) -> bool {
    g.n() == f.nvars() && g.apply(f) == *f
}
