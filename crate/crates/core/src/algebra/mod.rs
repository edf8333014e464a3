//! Exact scalars and univariate polynomials.

mod field;
mod poly;

pub(crate) use field::pow_mod;
pub use field::{FieldElement, FieldSpec, Prime, MAX_MODULUS};
pub use poly::{companion, Polynomial};
