use std::fmt;

use thiserror::Error;

use crate::formula::OccAddress;
use crate::names::{Action, Name};

/// Location of a syntax error in formula or model text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    /// Byte offset from the start of the input.
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub(crate) fn locate(text: &str, offset: usize) -> Self {
        let before = &text[..offset.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Position {
            offset,
            line,
            column,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Position, msg: String },

    #[error("variable `{var}` occurs negatively under its binder (at {pos})")]
    PositivityViolation { var: Name, pos: Position },

    #[error("variable `{0}` is not positive")]
    NotPositive(Name),

    #[error("formula is not well-named")]
    NotWellNamed,

    #[error("variable `{0}` is bound in the formula")]
    BoundVariable(Name),

    #[error("address {0} does not denote a subformula occurrence")]
    IllAddressed(OccAddress),

    #[error("address {0} does not denote a free variable occurrence")]
    NotAFreeOccurrence(OccAddress),

    #[error("unknown action `{0}`")]
    UnknownAction(Action),

    #[error("unknown variable `{0}`")]
    UnknownVariable(Name),

    #[error("variable `{0}` is not fresh")]
    NotFresh(Name),

    #[error("invalid translation scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid search budget: {0}")]
    InvalidBudget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
