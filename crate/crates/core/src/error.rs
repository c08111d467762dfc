use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),

    #[error("polynomials live in different ambient rings")]
    RingMismatch,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("wrong degree: {0}")]
    WrongDegree(String),

    #[error("expected {expected} elements, got {got}")]
    WrongCount { expected: usize, got: usize },

    #[error("generator {0} of the candidate reduction is not in the ideal")]
    NotContained(String),

    #[error("matrix entry ({row}, {col}) does not lie in ideal number {row}")]
    EntryNotInIdeal { row: usize, col: usize },

    #[error("{vars} variables exceed the dimension-computation limit of {limit}")]
    TooManyVariables { vars: usize, limit: usize },

    #[error("diagonal component has {0} basis monomials, limit is {limit}", limit = crate::algebra::MAX_DIAGONAL_GENERATORS)]
    DiagonalTooLarge(usize),

    #[error("reduction test inconclusive up to N = {0}")]
    Inconclusive(usize),

    #[error("no accepted replacement after {attempts} candidates")]
    ExchangeExhausted { attempts: usize, rejected: Vec<String> },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
