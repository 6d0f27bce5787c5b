use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("matrix is not in SL(2,Z) (det = {0})")]
    NotSL(String),
    #[error("matrix is not Anosov (need |trace| > 2 and det = ±1): {0}")]
    NotAnosov(String),
    #[error("wrong determinant: expected {expected}, found {found}")]
    WrongDeterminant { expected: i32, found: String },
    #[error("scalar matrix has no rank-2 commutant lattice")]
    ScalarMatrix,
    #[error("empty word: operation needs a hyperbolic element")]
    EmptyWord,
    #[error("element is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism does not descend to the quotient mod {0}")]
    DoesNotDescend(u64),
    #[error("matrix has infinite order modulo {0}")]
    OrderNotFinite(u64),
    #[error("no valid finite quotient with modulus <= {0}")]
    NoValidQuotient(u64),
    #[error("finite quotient too large: {0} elements (limit {1})")]
    QuotientTooLarge(u64, u64),
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("invalid geometry descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("index {0} out of range {1}")]
    OutOfRange(i64, &'static str),
    #[error("exponent-sum matrix {found} differs from intended {intended}")]
    MatrixMismatch { found: String, intended: String },
    #[error("fundamental unit search exhausted (discriminant {0})")]
    PellSearchExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// An internally produced witness failed exact verification.
    #[error("internal verification failure: {0}")]
    Verification(String),
}

impl Error {
    /// True for failures of internal witness verification, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
