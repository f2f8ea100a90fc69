//! Exact arithmetic in GF(p^n) and dense linear algebra over it.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod span;

pub use field::{Embedding, Field, FieldDesc, FieldElem};
pub use matrix::{Matrix, MatrixJson, Rref};
pub use poly::Poly;
pub use span::EchelonSpan;
