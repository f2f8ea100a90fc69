//! Subadditive functions on representations of elementary abelian p-groups.

pub mod error;
pub mod exactla;
pub mod geometry;
pub mod homalg;
pub mod modrep;
pub mod pipoints;

pub use error::{Error, Result};
