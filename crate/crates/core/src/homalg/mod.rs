//! Hom spaces, stable Hom, Ext and extensions.

pub mod endo;
pub mod ext;
pub mod hom;
pub mod sequence;

pub use endo::{chi_module, end_simple_dim, ChiModule, EndRing};
pub use ext::{bcr_gap_check, gap_report, ext_dim, phom_dim, stable_hom_dim, tate_ext_dim, tate_ext_profile, GapReport};
pub use hom::{hom_basis, hom_dim, hom_space, HomSpace, Presentation};
pub use sequence::{realize_extension, syzygy_sequence, ModuleSlot, SequenceJson, ShortExactSeq};
