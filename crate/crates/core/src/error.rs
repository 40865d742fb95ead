use thiserror::Error;

use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular (no pivot for row {pivot_row})")]
    Singular { pivot_row: usize },

    #[error("resolvent 1 - {param}·S is singular at {param} = {value}")]
    SingularResolvent { param: &'static str, value: Scalar },

    #[error("Möbius map undefined: 1 + γ·S is singular at γ = {gamma}")]
    MobiusUndefined { gamma: Scalar },

    #[error("pole: factor `{factor}` vanishes")]
    Pole { factor: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("site {site} out of range for a chain of {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("dimension {dim} exceeds the limit of {limit}")]
    DimensionGuard { dim: usize, limit: usize },

    #[error("local dimension must be at least 2, got {0}")]
    LocalDimension(usize),

    #[error("{family} is missing parameter `{name}`")]
    MissingParameter { family: String, name: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
}
