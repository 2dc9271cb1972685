use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("a=1 excluded")]
    UnitParameter,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("constant term is zero (a must be invertible)")]
    ZeroConstantTerm,

    #[error("reducible polynomial: {factor} * {cofactor}")]
    Reducible { factor: String, cofactor: String },

    #[error("polynomial has no positive real root different from 1")]
    NoPositiveRoot,

    #[error("elements belong to different parameter contexts")]
    ContextMismatch,

    #[error("period must be at least 1")]
    ZeroPeriod,

    #[error("guard exceeded: {what} = {value} > {limit}")]
    GuardExceeded { what: String, value: String, limit: String },

    #[error("root finder did not converge after {iterations} iterations (max residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("character of period {period} has least period {least}; pass the override flag to build a decomposable block")]
    NotLeastPeriod { period: usize, least: usize },

    #[error("Dirac spec has no block for period {0}")]
    BlockMisalignment(usize),

    #[error("not enough data: {0}")]
    InsufficientData(String),
}

impl Error {
    pub(crate) fn guard(what: &str, value: impl ToString, limit: impl ToString) -> Self {
        Error::GuardExceeded {
            what: what.to_string(),
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }
}
