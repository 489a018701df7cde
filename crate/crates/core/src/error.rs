use thiserror::Error;

/// Errors raised by word operations whose preconditions are not met.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} is undefined on the empty word")]
    EmptyWord { op: &'static str },

    #[error("{op} is undefined on the constant word {word}")]
    ConstantWord { op: &'static str, word: String },

    #[error("invalid character {found:?} at position {position} (expected 'a' or 'b')")]
    InvalidLetter { position: usize, found: char },

    #[error("{0} is not a central word")]
    NotCentral(String),

    #[error("{0} is not a proper Christoffel word")]
    NotChristoffel(String),

    #[error("{0} is not a proper standard word")]
    NotStandard(String),

    #[error("word has no factorization over the code at position {position}")]
    NotInCode { position: usize },

    #[error("image pair ({0}, {1}) is not a uniquely decodable code")]
    AmbiguousCode(String, String),

    #[error("slope {p}/{q} is not a pair of coprime integers with p+q > 0")]
    InvalidSlope { p: u64, q: u64 },

    #[error("invalid recurrence coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid directive stream: {0}")]
    InvalidStream(String),

    #[error("{what}: requested {requested} exceeds the limit {limit}")]
    LimitExceeded { what: &'static str, requested: usize, limit: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
