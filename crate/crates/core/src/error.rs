use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element id {0}")]
    UnknownElement(usize),

    #[error("unknown point id {0}")]
    UnknownPoint(usize),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("element `{0}` is not a prime")]
    NotPrime(String),

    #[error("admissibility violated: {0}")]
    AdmissibilityViolated(String),

    #[error("ambiguous choice for prime `{prime}`: candidates {candidates:?}")]
    AmbiguousChoice {
        prime: String,
        candidates: Vec<String>,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("not a support datum: {0}")]
    NotSupportDatum(String),

    #[error("malformed descriptor: {0}")]
    MalformedDescriptor(String),

    #[error("descriptor family not closed: {0}")]
    DescriptorEscape(String),

    #[error("dimension mismatch: expected Krull dimension {expected}, got {actual}")]
    DimensionMismatch { expected: i64, actual: i64 },

    #[error("inconsistent embedding codimension at `{point}`: {reason}")]
    InconsistentEcodim { point: String, reason: String },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),
}
