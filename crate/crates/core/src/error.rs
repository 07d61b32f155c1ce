use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("recurrence overflow at degree {degree}; largest safe degree is {largest_safe}")]
    Overflow { degree: usize, largest_safe: usize },

    #[error("numerical failure: {message} (worst residual {worst_residual:e})")]
    NumericalFailure { message: String, worst_residual: f64 },

    #[error("index {index} out of range (maximum {max})")]
    OutOfRange { index: usize, max: usize },

    #[error("point {0} is outside the open domain")]
    OutsideDomain(f64),

    #[error("singular point at x = {0}")]
    SingularPoint(f64),

    #[error("unknown model '{0}'")]
    UnknownModel(String),

    #[error("model '{model}' does not support {operation}")]
    Unsupported { model: String, operation: String },

    #[error("inconsistent model data: {0}")]
    Consistency(String),

    #[error("constraint error: {0}")]
    Constraint(String),

    #[error("potential is not finite at x = {0}")]
    SingularPotential(f64),

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("insufficient bound states: requested {requested}, model has {available}")]
    InsufficientBoundStates { requested: usize, available: usize },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("W_0 cannot be canonicalized (spread {spread:e})")]
    NotCanonicalizable { spread: f64 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid model specification: {0}")]
    ModelSpec(String),
}
