use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no admissible prime up to bound {bound}")]
    BoundExceeded { bound: u64 },

    /// Every linking pattern reachable from the seed was tried without
    /// finding a mild one.
    #[error("no admissible augmentation of the seed is mild")]
    SearchExhausted,

    #[error("no eliminable generator: {0}")]
    NoEliminableGenerator(String),

    #[error("denominator must have constant term 1")]
    ZeroConstantTerm,

    /// A dimension formula produced a value that cannot be a dimension, so the
    /// signature cannot come from a strongly free sequence.
    #[error("{kind} at n = {n} is {value}, not a nonnegative integer")]
    NotRealizable {
        kind: &'static str,
        n: usize,
        value: String,
    },

    #[error("ring or truncation mismatch between operands")]
    RingMismatch,

    #[error("multiplication by pi is only defined over F2[pi]")]
    PiOnF2,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("product exceeds truncation degree {0}")]
    Truncated(u32),

    /// The oracle refused to allocate the elimination matrix for `degree`.
    /// Degrees `0..=reached` were completed before the guard tripped.
    #[error(
        "memory guard exceeded at degree {degree}: needs {required_mib} MiB, cap is {cap_mib} MiB (completed through degree {reached})"
    )]
    MemoryGuard {
        degree: usize,
        reached: usize,
        required_mib: u64,
        cap_mib: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
