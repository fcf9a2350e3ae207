//! Exact algebraic substrate: fields, matrices, polynomials, exterior algebra.

pub mod exterior;
pub mod field;
pub mod ideal;
pub mod matrix;
pub mod poly;

pub use exterior::ExteriorElement;
pub use field::{BaseField, Field, FieldElement};
pub use matrix::{FMatrix, Matrix, Ring};
pub use poly::MultiPoly;
