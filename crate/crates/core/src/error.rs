use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0}: letters are 0 or 1")]
    InvalidLetter(u32),
    #[error("invalid character {0:?}: expected '0' or '1'")]
    InvalidCharacter(char),
    #[error("malformed index sequence {0:?}: expected \"preperiod|period\"")]
    MalformedSequence(String),
    #[error("index sequence period must be nonempty")]
    EmptyPeriod,
    #[error("sequence indices are 1-based; got 0")]
    ZeroIndex,
    #[error("malformed rational {0:?}: expected \"p/q\" or an integer")]
    MalformedRational(String),
    #[error("gamma must satisfy 0 < gamma < 1, got {0}")]
    GammaOutOfRange(String),
    #[error("sequences are identical; the operation needs distinct sequences")]
    IdenticalSequences,
    #[error("precision must be positive")]
    ZeroPrecision,
    #[error("precision {available} is below the required {required}")]
    PrecisionShortfall { required: usize, available: usize },
    #[error("integer {0} does not fit in {1} binary digits")]
    IntegerOutOfRange(String, usize),
    #[error("enumeration length {n} out of range: need {min} <= n <= {max}")]
    EnumerationLength { n: usize, min: usize, max: usize },
    #[error("invalid serialized term: {0}")]
    InvalidTerm(String),
}
