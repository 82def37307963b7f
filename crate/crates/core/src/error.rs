use thiserror::Error;

pub type Result<T, E = QesError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QesError {
    /// `g` must be strictly positive so that `λ = (1+g)/g` is finite.
    #[error("shape parameter g must be > 0, got {0}")]
    NonPositiveShape(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("energy must be <= 0 on the quasi-solvable branch, got {0}")]
    PositiveEnergy(f64),

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("quasi-solvability condition violated at n = {n} (residual {residual:e})")]
    ConditionViolated { n: usize, residual: f64 },

    #[error("extracted v2 is not real (imaginary part {0:e})")]
    Unphysical(f64),

    #[error("constraint polynomial is only available at g = 1/4, got g = {0}")]
    UnsupportedShape(f64),

    #[error("constraint polynomial is only tabulated for n = 1 and n = 2, got n = {0}")]
    UnsupportedLevel(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}
