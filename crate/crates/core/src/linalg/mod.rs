//! Exact rational linear algebra.

pub mod matrix;
pub mod rational;
pub mod subspace;

pub use matrix::RationalMatrix;
pub use rational::{q, Rational};
pub use subspace::{
    commutation_constraints, express_in_span, nullspace, rank_of_vectors, solve_linear_subspace,
};
