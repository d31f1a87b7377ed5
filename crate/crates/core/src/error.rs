use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("invalid field modulus {0}: must be a prime >= 3")]
    InvalidModulus(u64),
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("beta = {beta} is outside 0..={max}")]
    BetaOutOfRange { beta: usize, max: usize },
    #[error("invalid curve context: {0}")]
    InvalidContext(String),
    #[error("polynomial is not in the ideal of the curve; normal form {0}")]
    NotInIdeal(String),
    #[error("evaluation map is zero (F lies in the square of the ideal)")]
    ZeroMap,
    #[error("inadmissible splitting type: {0}")]
    InadmissibleType(String),
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    #[error("surgery changed the splitting type: {0}")]
    SurgeryVerificationFailed(String),
    #[error("no invertible lower block reached the corank bound after {0} attempts")]
    LSearchExhausted(usize),
    #[error("twist scan did not terminate inside the window [{lo}, {hi}]")]
    ScanIncomplete { lo: i64, hi: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
