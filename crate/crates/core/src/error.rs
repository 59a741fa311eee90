use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient truncation: have {have} coefficients, need {need}")]
    Precision { need: usize, have: usize },
    #[error("invalid series spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixed-point expansion diverges: {0}")]
    ExpansionDivergence(String),
    #[error("composition requires a series with zero constant term")]
    CompositionDomain,
    #[error("no compositional inverse: linear coefficient is zero")]
    NotInvertible,
    #[error("sqrt substitution needs even support; odd-index coefficient at t^{index}")]
    SqrtDomain { index: usize },
    #[error("not proper: {0}")]
    Improper(String),
    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
