use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is reducible over GF({1})")]
    Reducible(Vec<u32>, u32),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("field GF({0}) is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("generator {0} is not p-nilpotent")]
    GeneratorNotNilpotent(usize),
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("field characteristic {field} does not match group prime {group}")]
    WrongCharacteristic { field: u32, group: u32 },
    #[error("{0} is not an extension of {1}")]
    NotExtension(String, String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("endomorphism ring is not local")]
    NotLocal,
    #[error("inexact endolength division: {hom} / {e}")]
    InexactDivision { hom: usize, e: usize },
    #[error("pi-point coefficient vector is zero")]
    ZeroPiPoint,
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("operation unavailable: {0}")]
    Unavailable(String),
    #[error("invalid data: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
