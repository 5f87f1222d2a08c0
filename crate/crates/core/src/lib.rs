//! Finite-field algebra for composed polynomials `f(L_g(x))`, where `L_g` is
//! the linearized polynomial associated with `g`.
//!
//! The crate predicts the degrees of the irreducible factors of `f(L_g(x))` in
//! closed form ([`distribution`]), builds high-degree irreducible polynomials
//! from primitive ones ([`construct`]) and factors `f(x^q - x)` explicitly
//! ([`explicit`]). A complete factorization routine ([`poly::factor`]) serves
//! as the oracle for all of it.

pub mod construct;
pub mod distribution;
mod error;
pub mod explicit;
pub mod field;
pub mod linearized;
pub mod poly;
pub mod text;

pub use error::{Error, ParseError, Result};
pub use field::{ExtElement, ExtField, FieldElement, FiniteField};
pub use poly::{Factorization, Poly};
