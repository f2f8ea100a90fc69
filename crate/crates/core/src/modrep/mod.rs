//! Finite-dimensional modules over kE for E = (Z/p)^r.

pub mod cover;
pub mod decompose;
pub mod module;
pub mod random;

pub use cover::{free_rank, is_projective, omega, projective_cover, strip_projective, ProjectiveCover};
pub use decompose::{decompose, invariants, is_isomorphic, Decomposition, Invariants, Summand};
pub use module::{GroupDesc, Module, ModuleJson};
pub use random::random_module;
