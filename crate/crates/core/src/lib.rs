//! Exact computations with representations of the generalized Kronecker
//! quiver `K_r` and the numerical invariants of their Steiner bundles.

pub mod bundles;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exactmat;
pub mod functors;
pub mod homalg;
pub mod kronrep;
pub mod restrict;
pub mod stability;

pub use error::{Error, Result};
pub use exactmat::{Field, FieldSpec, Matrix, PrimeField, Rational, Rationals};
pub use kronrep::{AnyRep, DimVec, FpRep, KronRep, Provenance, QRep};

pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
