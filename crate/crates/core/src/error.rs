use thiserror::Error;

pub type Result<T, E = EvalError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} {what}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("weight {index} is not strictly positive and finite")]
    NonPositiveWeight { index: usize },
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("basis stream value {index} is not strictly positive and finite")]
    NonPositiveStream { index: usize },
    #[error("parameter {value} is outside {domain}")]
    ParameterOutOfDomain { value: f64, domain: &'static str },
    #[error("operation requires a polynomial curve, but weights were given")]
    WeightedInput,
    #[error("operation requires a rational curve, but no weights were given")]
    MissingWeights,
    #[error("curve {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("blending factor h_{index} is zero; certificate undefined")]
    ZeroBlend { index: usize },
    #[error("malformed trace: {0}")]
    MalformedTrace(&'static str),
    #[error("empty input")]
    Empty,
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
}
