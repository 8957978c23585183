use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal precision: {0}")]
    InternalPrecision(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("reduction did not terminate after {0} steps")]
    NonTerminating(usize),
    #[error("(p, n) = ({p}, {n}) exceeds the configured caps (p <= {max_p}, n <= {max_n})")]
    CapExceeded {
        p: u64,
        n: usize,
        max_p: u64,
        max_n: usize,
    },
    #[error("mismatched Witt rings: {0}")]
    MismatchedRing(String),
    #[error("bad truncation length {m} for a vector of length {n}")]
    BadLength { m: usize, n: usize },
    #[error("lower jump {0} is not an integer")]
    NonIntegralLowerJump(String),
    #[error("invalid jump sequence: {0}")]
    InvalidJumps(String),
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("branch locus has a place of degree {0} > 1")]
    IrrationalBranchPoint(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
