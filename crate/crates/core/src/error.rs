use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Mathematical flags (`Divergent`, `HypothesisFailed`, `Inconclusive`) are
/// kept apart from input errors so the CLI can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    Spec(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("non-finite integrand value at {0}")]
    NonFinite(String),
    #[error("kernel tail not controlled: {0}")]
    TailNotControlled(String),
    #[error("functional diverges: {0}")]
    Divergent(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("exponent gap violated: 2a + 2 - b = {0} <= 0")]
    ExponentGapViolated(f64),
    #[error("classification inconclusive: {0}")]
    Inconclusive(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for outcomes that describe the mathematics rather than bad input.
    pub fn is_mathematical_flag(&self) -> bool {
        matches!(
            self,
            Error::Divergent(_)
                | Error::HypothesisFailed(_)
                | Error::ExponentGapViolated(_)
                | Error::Inconclusive(_)
                | Error::TailNotControlled(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
