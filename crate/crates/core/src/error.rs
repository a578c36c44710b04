use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names are stable: the command-line front end prints them verbatim
/// as the diagnostic tag, so scripts can match on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word is empty")]
    EmptyWord,
    #[error("illegal character {0:?} (words use only 'a' and 'b')")]
    IllegalCharacter(char),
    #[error("word is a power of a single generator")]
    PowerOfSingleLetter,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("XY-word contains no {0}")]
    NoSuchLetter(char),
    #[error("enumeration of {count} candidates exceeds the cap of {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },
    #[error("no feasible partition (residual {residual})")]
    NoFeasiblePartition { residual: i128 },
    #[error("{g} does not divide h_a = {h_a}")]
    NotADivisor { g: u64, h_a: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("map denominator vanishes at x = {0}")]
    PoleHit(String),
    #[error("value {0} is out of the supported range")]
    OutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// The variant name, used as a machine-readable tag.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyWord => "EmptyWord",
            Error::IllegalCharacter(_) => "IllegalCharacter",
            Error::PowerOfSingleLetter => "PowerOfSingleLetter",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::MalformedRational(_) => "MalformedRational",
            Error::NoSuchLetter(_) => "NoSuchLetter",
            Error::EnumerationCapExceeded { .. } => "EnumerationCapExceeded",
            Error::NoFeasiblePartition { .. } => "NoFeasiblePartition",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::NotPrime(_) => "NotPrime",
            Error::PoleHit(_) => "PoleHit",
            Error::OutOfRange(_) => "OutOfRange",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
