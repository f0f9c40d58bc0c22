//! Error type shared across the crate.
//!
//! The variants are coarse on purpose: callers (including the `bgold` binary,
//! which maps them to process exit codes) care about *why* an operation
//! refused, not about the internal call site. Every refusal carries a
//! human-readable detail string.

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested result cannot be certified at any supported precision:
    /// a terminating continued fraction ran out of coefficients, a decimal
    /// literal was pushed past its stated validity bound, or a built-in
    /// constant ran out of stored digits.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A certified interval straddles a decision boundary, so the predicate
    /// cannot be answered either way. This is a precision-class refusal:
    /// it never silently degrades into a guess.
    #[error("ambiguous at certified precision: {0}")]
    Ambiguity(String),

    /// The request exceeds a configured size budget (table memory,
    /// convolution length, nested-loop cost).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Malformed or out-of-domain arguments.
    #[error("bad arguments: {0}")]
    BadArguments(String),

    /// Underlying I/O failure (cache files, CSV output).
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A binary cache file exists but does not decode to a valid table.
    #[error("cache format: {0}")]
    CacheFormat(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the `bgold` binary for this error class:
    /// 2 = precision exhausted / ambiguous, 3 = capacity, 4 = bad arguments,
    /// 1 = anything else (I/O, corrupt cache).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted(_) | Error::Ambiguity(_) => 2,
            Error::Capacity(_) => 3,
            Error::BadArguments(_) => 4,
            Error::Io(_) | Error::CacheFormat(_) => 1,
        }
    }

    /// Stable machine-readable category slug, printed by the binary in its
    /// error lines (`error[<category>]: ...`).
    pub fn category(&self) -> &'static str {
        match self {
            Error::PrecisionExhausted(_) => "precision-exhausted",
            Error::Ambiguity(_) => "ambiguity",
            Error::Capacity(_) => "capacity",
            Error::BadArguments(_) => "bad-arguments",
            Error::Io(_) => "io",
            Error::CacheFormat(_) => "cache-format",
        }
    }
}
