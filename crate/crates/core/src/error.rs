use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty set")]
    EmptySet,

    #[error("invalid bit string {0:?}: expected ASCII '0'/'1' of length 1..=64")]
    InvalidBitString(String),

    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("duplicate class member {0}")]
    DuplicateMember(String),

    #[error("infeasible class request: {0}")]
    InfeasibleClass(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("promise violated: oracle string is not a member of the class")]
    PromiseViolated,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("missing solution block for output {0}")]
    MissingBlock(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("too large for exhaustive mode: {0}")]
    TooLarge(String),

    #[error("outside certificate regime: {0}")]
    OutsideCertificateRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
