use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum YmError {
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("equation not affine in the unknowns: {0}")]
    NotAffine(String),
    #[error("no instance found: {0}")]
    NotFound(String),
    #[error("fixture checksum mismatch: expected {expected}, got {actual}")]
    ChecksumMismatch { expected: String, actual: String },
    #[error("malformed fixture: {0}")]
    Fixture(String),
    #[error("zero momentum")]
    ZeroMomentum,
    #[error("momentum is not null")]
    NotNull,
    #[error("propagator pole: internal momentum is on shell")]
    OnShellPole,
    #[error("degenerate kinematics: an internal momentum is null")]
    DegenerateKinematics,
    #[error("arity {0} outside supported range")]
    Arity(usize),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("certificate error: {0}")]
    Certificate(String),
    #[error("{letters} V-letters exceed the truncation budget {budget}")]
    LetterBudgetExceeded { letters: usize, budget: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, YmError>;
