use thiserror::Error;

/// Errors raised by map construction, arithmetic on maps, and the
/// entropy and homotopy routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("resource limit: {needed} breakpoints exceeds cap {cap}")]
    ResourceLimit { cap: usize, needed: usize },
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("continuity error: {0}")]
    Continuity(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("degenerate interval [{lo}, {hi}]")]
    DegenerateInterval { lo: String, hi: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
