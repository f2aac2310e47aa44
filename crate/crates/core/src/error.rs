use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: must be in [2, 2^32)")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("the zero element has no zero set")]
    ZeroElement,

    #[error("empty set")]
    EmptySet,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{u} is not a unit modulo {n}")]
    NotAUnit { u: u64, n: u32 },

    #[error("residue {residue} listed twice")]
    DuplicateResidue { residue: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not of the form p^n q r with distinct primes")]
    NotPnqr(u32),

    #[error("{prime} is not a prime divisor of {n}")]
    NotPrimeDivisor { prime: u32, n: u32 },

    #[error("exponent {exponent} out of range for this class (n = {n})")]
    ExponentOutOfRange { exponent: u32, n: u32 },

    #[error("hypothesis class {0} is not in the zero set")]
    HypothesisNotSatisfied(String),

    #[error("{0} requires the set to contain 0")]
    MissingZero(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exhaustive scan of N = {n} needs about {estimate} classes, above the ceiling {ceiling}")]
    CeilingExceeded { n: u32, estimate: u64, ceiling: u64 },

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("malformed record: {0}")]
    MalformedRecord(String),

    #[error("certificate format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
