//! Exact scalars and integer/field matrices.

mod cyclotomic;
mod matrix;
pub mod ntheory;
mod scalar;
mod snf;

pub use cyclotomic::CyclotomicRing;
pub use matrix::{mat_inverse_over_field, IntMatrix, Mat};
pub use scalar::{Integers, PrimeField, Rationals, ScalarField, ScalarRing};
pub use snf::{snf, SnfResult};
