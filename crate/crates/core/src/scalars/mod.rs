//! Exact scalars and polynomials in the grading variable.

mod field;
mod poly;
mod rational;

pub use field::{cyclotomic_polynomial, Field, FieldSpec, Scalar};
pub use poly::TracePoly;
pub use rational::Rational;
