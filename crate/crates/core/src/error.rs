use std::io;

use thiserror::Error;

/// Errors raised by set arithmetic, lemma pipelines and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("coordinate overflow in {0}")]
    Overflow(&'static str),

    #[error("empty input to {0}")]
    EmptyInput(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// A theorem-exact postcondition failed. This always signals a bug.
    #[error("assertion failed in {op}: {detail}")]
    Assertion { op: &'static str, detail: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("iteration cap {cap} exceeded in {op}")]
    IterationCap { op: &'static str, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn assertion(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Assertion { op, detail: detail.into() }
    }

    pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition { op, detail: detail.into() }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// Whether this is, possibly inside a stage, a failed postcondition.
    pub fn is_assertion(&self) -> bool {
        match self {
            Error::Assertion { .. } => true,
            Error::Stage { source, .. } => source.is_assertion(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
