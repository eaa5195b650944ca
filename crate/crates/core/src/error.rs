use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot substitute 0 for `{var}`: the polynomial has a negative power of it")]
    ZeroSubstitutionIntoLaurent { var: char },

    #[error("substituting {value} for `{var}` leaves the integers (negative power {exponent})")]
    NonIntegralSubstitution { var: char, value: String, exponent: i32 },

    #[error("size {n} exceeds the enumeration bound {limit} (set SNAKEPATH_MAX_N to raise it)")]
    BoundExceeded { n: usize, limit: usize },

    #[error("window {0:?} has a negative entry; statistic is defined on ordinary permutations only")]
    NotTypeA(Vec<i32>),

    #[error("operation is not defined for snake flavor {0}")]
    FlavorUnsupported(String),

    #[error("statistic {stat} needs flavor {expected}, got {found}")]
    FlavorMismatch {
        stat: &'static str,
        expected: &'static str,
        found: String,
    },

    #[error("no snake has absolute values {perm:?} and cs-vector {csv:?}")]
    InconsistentVector { perm: Vec<u32>, csv: Vec<u8> },

    #[error("{0:?} is not a snake of the requested flavor")]
    NotASnake(Vec<i32>),

    #[error("path is outside scheme {scheme}: {reason}")]
    SchemeMismatch { scheme: String, reason: String },

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
