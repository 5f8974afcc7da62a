use thiserror::Error;

/// Errors produced by group construction and G-set operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("group order exceeds cap of {cap} (closure reached {reached} elements)")]
    OrderCapExceeded { cap: usize, reached: usize },

    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("operands belong to different groups")]
    GroupMismatch,

    #[error("brute-force cap exceeded: {0}")]
    BruteForceCapExceeded(String),

    #[error("vector does not lie in the kernel lattice")]
    NotInKernel,

    #[error("the zero vector corresponds to the empty pair")]
    ZeroVector,

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("congruence failed: need q = 1 (mod p), got p = {p}, q = {q}")]
    BadCongruence { p: usize, q: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
