use std::fmt;

use thiserror::Error;

/// A named inequality that a parameter point fails to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The inequality as written, e.g. `2c2-c1 > 2n-2`.
    pub inequality: &'static str,
    /// The evaluated sides, e.g. `1 <= 2`.
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: {}", self.inequality, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hypothesis violation: {}", join(.0))]
    HypothesisViolation(Vec<Violation>),
}

fn join(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
