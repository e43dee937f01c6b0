use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain size must be at least 1")]
    EmptyChain,
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("value {value} at position {position} is outside the chain 0..{n}")]
    OutOfRange { position: usize, value: usize, n: usize },
    #[error("map is not monotone: value at {position} is below its predecessor")]
    NotMonotone { position: usize },
    #[error("operands live on chains of different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("run-length counts sum to {sum}, expected {n}")]
    CountSumMismatch { sum: usize, n: usize },
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("{endo} is not an element of {simplex}")]
    NotInSimplex { endo: String, simplex: String },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {0} is not a vertex of the simplex")]
    NotSubset(usize),
    #[error("invalid type vector: {0}")]
    InvalidType(String),
    #[error("nilpotency level {level} out of range for k = {k}")]
    LevelOutOfRange { level: usize, k: usize },
    #[error("type set is not a subsemiring: {0}")]
    NotASubsemiring(String),
    #[error("input set is not admissible: {0}")]
    NotAdmissibleInput(String),
    #[error("no closed-set rule for derivation type {0} in dimension {1}")]
    UnsupportedType(String, usize),
    #[error("matrices are over different semirings ({left} vs {right})")]
    SemiringMismatch { left: String, right: String },
    #[error("semiring {0} has no enumerable carrier")]
    NotEnumerable(String),
    #[error("claim {claim} cannot run on {scope}: {reason}")]
    IncompatibleSpec {
        claim: String,
        scope: String,
        reason: String,
    },
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
