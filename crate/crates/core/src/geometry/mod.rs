//! Subadditive functions, their additive loci, and the order on loci.

pub mod corpus;
pub mod function;
pub mod locus;
pub mod poset;
pub mod reconstruct;
pub mod report;
pub mod suites;

pub use corpus::{build_corpus, sha256_hex, Corpus, CorpusConfig, CorpusJson, CorpusSeq, SeqKind, Witness};
pub use function::{tensor_closure, Carrier, SubadditiveFn};
pub use locus::{
    adloc_census, adloc_member, compare, defect, is_tensor_closed, is_thick, relation, verify_axioms, AdlocMode,
    AxiomReport, Census, Relation, SummandCatalogue, TensorClosureReport, ThickReport,
};
pub use poset::{equivalence_classes, join_irreducibles, ClassPoset};
pub use reconstruct::reconstruct_proj;
pub use report::{Assertion, SuiteConfig, SuiteReport};
pub use suites::{
    pointwise_mismatches, points_over, run_suite, syzygy_tensor_identity, verify_adloc, verify_bcr, verify_cb_decomp,
    verify_pipoint, verify_pipoint_lemmas, verify_point_modules, verify_sums, SUITES,
};
