//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be a positive integer")]
    ZeroInput,
    #[error("empty input sequence")]
    EmptySequence,
    #[error("exponent parameter b must be >= 1")]
    InvalidExponent,
    #[error("theorem verification requires b >= 2 (b = 1 asymptotics carry a log factor and a double pole)")]
    TheoremNeedsB2,
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("memory guard exceeded: N = {0} > 10^8")]
    MemoryGuard(u64),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("zeta has a pole at s = 1")]
    ZetaPole,
    #[error("tolerance {0:e} unachievable within prime/term limits")]
    ToleranceUnachievable(f64),
    #[error("need at least {need} usable points, got {got}")]
    InsufficientPoints { need: usize, got: usize },
    #[error("checkpoint span too small: need at least 2 decades")]
    SpanTooSmall,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

impl Error {
    /// Stable one-line code for CLI stderr output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput => "zero-input",
            Error::EmptySequence => "empty-sequence",
            Error::InvalidExponent => "invalid-exponent",
            Error::TheoremNeedsB2 => "theorem-needs-b2",
            Error::Overflow(_) => "overflow",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::MemoryGuard(_) => "memory-guard",
            Error::Domain(_) => "domain",
            Error::ZetaPole => "zeta-pole",
            Error::ToleranceUnachievable(_) => "tolerance-unachievable",
            Error::InsufficientPoints { .. } => "insufficient-points",
            Error::SpanTooSmall => "span-too-small",
            Error::InvalidParam(_) => "invalid-param",
        }
    }
}
