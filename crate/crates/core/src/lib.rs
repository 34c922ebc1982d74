//! Bigraded B-model state spaces of Landau-Ginzburg orbifolds.
//!
//! Given a quasihomogeneous polynomial `f` with an isolated singularity and a
//! finite group `G` of monomial symmetries containing the grading element
//! `j_f`, this crate builds the state space `B(f, G)`, its Hodge diamond, and
//! checks the diamond symmetries.

pub mod cyclotomic;
pub mod error;
pub mod jacobian;
pub mod linalg;
pub mod polynomial;
pub mod quasihom;
pub mod rational;
pub mod smith;
pub mod statespace;
pub mod symmetry;

pub use cyclotomic::CycNum;
pub use error::Error;
pub use polynomial::{Monomial, Polynomial};
pub use rational::Q;
