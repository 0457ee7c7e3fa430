use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient `{0}` must be non-zero")]
    ZeroCoefficient(&'static str),

    #[error("nonlinearity power `{0}` must be positive")]
    NonPositivePower(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("validity error: {0}")]
    Validity(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("no positive root of the quadrature potential: {0}")]
    NoRoot(String),

    #[error("divergent integral: {0}")]
    DivergentIntegral(String),

    #[error("no turning point: {0}")]
    NoTurningPoint(String),

    #[error("degenerate constants: {0}")]
    Degenerate(String),

    #[error("profile has unbounded support")]
    NonCompact,

    #[error("conservation law not applicable: {0}")]
    LawNotApplicable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integration failed: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
