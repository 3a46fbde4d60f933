use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous for the given weights")]
    NotHomogeneous,
    #[error("polynomial is not squarefree: repeated factor divides {factor}")]
    NotSquarefree { factor: String },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("invalid elimination block: {0}")]
    InvalidBlock(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("step budget of {budget} exhausted during {stage}")]
    Timeout { stage: String, budget: u64 },
    #[error("computation cancelled")]
    Cancelled,
    #[error("certificate check failed: {0}")]
    Certificate(String),
}

impl Error {
    pub fn is_timeout(&self) -> bool {
        matches!(self, Error::Timeout { .. } | Error::Cancelled)
    }

    /// Re-labels a timeout with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &str) -> Self {
        match self {
            Error::Timeout { budget, .. } => Error::Timeout { stage: stage.to_string(), budget },
            other => other,
        }
    }
}
