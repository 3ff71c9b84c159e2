use thiserror::Error;

use crate::surface::{ParseError, ValidationError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the evaluated function.
    #[error("{op}: domain error: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Validation(#[from] ValidationError),

    /// A group element whose trace is within tolerance of +-2. Closed surface
    /// groups contain no parabolic or elliptic elements.
    #[error("non-hyperbolic element: |trace| = {trace_abs} is not above 2 + {tolerance:e}")]
    NonHyperbolic { trace_abs: f64, tolerance: f64 },

    #[error("numerical failure in {op}: {msg}")]
    Numerical { op: &'static str, msg: String },

    #[error(
        "scan budget exceeded: more than {budget} words visited at max word length {max_word_len}; \
         lower --scan-depth or raise --scan-budget"
    )]
    BudgetExceeded { budget: u64, max_word_len: usize },

    /// An internal invariant of a bound evaluator failed.
    #[error("invariant violated in {op}: {msg}")]
    Invariant { op: &'static str, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { op, msg: msg.into() }
}
