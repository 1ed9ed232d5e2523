use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("nonpositive coefficient at position {pos}")]
    NonPositiveCoefficient { pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero: exponents a_i and a_j are equal")]
    DivisionByZero,
    #[error("term index {index} out of range for a sum of {len} terms")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no admissible parameters found: {0}")]
    SearchExhausted(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid measurement at row {row}: {msg}")]
    InvalidMeasurement { row: usize, msg: String },
    #[error("empty candidate space")]
    EmptyCandidateSpace,
    #[error("empty sum")]
    EmptySum,
}
