//! Exact dense linear algebra over Q and prime fields.

mod field;
pub mod fp;
mod matrix;
mod rational;
mod subspace;

pub use field::{generic_rref, is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{complement, kernel_from_rref, Matrix, Rref};
pub use rational::Rational;
pub use subspace::{enumerate_subspaces, gaussian_binomial, total_subspaces, SubspaceIterator, DEFAULT_GUARD};
