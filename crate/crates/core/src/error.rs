use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("undecidable at tolerance: {0}")]
    Undecidable(String),
    #[error("matrix has non-real entries: {0}")]
    NonReal(String),
    #[error("invalid Hodge action: {0}")]
    InvalidAction(String),
    #[error("full Hodge action unavailable: {0}")]
    Fragment(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Mathematical failures (hypotheses, undecidable spectral questions,
    /// refused inputs) as opposed to malformed data.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::Undecidable(_) | Error::Hypothesis(_) | Error::Fragment(_) | Error::Domain(_)
        )
    }
}
