use std::fmt;

use thiserror::Error;

/// Position of a token in goal text, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("goals share variables: {}", .0.join(", "))]
    SharedVariables(Vec<String>),

    #[error("instance too large for exhaustive search: {what} is {actual}, bound is {bound}")]
    InstanceTooLarge {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at {span}: {message}")]
    Parse { span: Span, message: String },

    #[error("predicate `{name}` used with arities {first} and {second} (at {span})")]
    ArityConflict {
        name: String,
        first: usize,
        second: usize,
        span: Span,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
