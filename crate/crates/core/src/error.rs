use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("weight {0} is out of range (weights must lie in -1..={max})", max = crate::charring::MAX_WEIGHT)]
    InvalidWeight(i64),

    #[error("digit {digit} is not a valid base-{base} digit")]
    InvalidDigit { base: u64, digit: u64 },

    #[error("residue {value} outside 0..={max}")]
    ResidueOutOfRange { value: u64, max: u64 },

    #[error("character is not symmetric under x -> 1/x")]
    Asymmetric,

    #[error("weight {weight} has negative Weyl multiplicity {multiplicity}")]
    NegativeMultiplicity { weight: i64, multiplicity: i64 },

    #[error("division by the zero character")]
    ZeroDivisor,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("grid size {0} exceeds the supported maximum of 4096")]
    GridTooLarge(u64),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
