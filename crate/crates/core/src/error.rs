use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// 1-based position inside a text input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

/// Renders an optional location as a `"line L, column C: "` prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct At(pub Option<Location>);

impl fmt::Display for At {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(loc) => write!(f, "{loc}: "),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{at}unknown symbol `{name}`")]
    UnknownSymbol { name: String, at: At },

    #[error("{at}empty relator")]
    EmptyRelator { at: At },

    #[error("{at}duplicate relator (same word as relator {first})")]
    DuplicateRelator { first: usize, at: At },

    #[error("{at}{message}")]
    Syntax { message: String, at: At },

    #[error("{at}compact word `{text}` is ambiguous: symbol names are not single characters")]
    AmbiguousCompactForm { text: String, at: At },

    #[error("{at}undeclared variable `{name}`")]
    UndeclaredVariable { name: String, at: At },

    #[error("budget exceeded while {what} (cap {cap})")]
    BudgetExceeded { what: &'static str, cap: u64 },

    #[error("the rewriting system is not confluent")]
    NotConfluent,

    #[error("word `{word}` is not invertible")]
    NotInvertible { word: String },
}

impl Error {
    pub(crate) fn syntax(message: impl Into<String>, at: Option<Location>) -> Self {
        Error::Syntax {
            message: message.into(),
            at: At(at),
        }
    }

    pub(crate) fn budget(what: &'static str, cap: impl TryInto<u64>) -> Self {
        Error::BudgetExceeded {
            what,
            cap: cap.try_into().unwrap_or(u64::MAX),
        }
    }

    /// True for errors caused by malformed input (as opposed to analysis limits).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownSymbol { .. }
                | Error::EmptyRelator { .. }
                | Error::DuplicateRelator { .. }
                | Error::Syntax { .. }
                | Error::AmbiguousCompactForm { .. }
                | Error::UndeclaredVariable { .. }
        )
    }

    /// Fills in a location for errors that were raised without one.
    pub(crate) fn located(self, loc: Location) -> Self {
        let fix = |at: At| At(at.0.or(Some(loc)));
        match self {
            Error::UnknownSymbol { name, at } => Error::UnknownSymbol { name, at: fix(at) },
            Error::EmptyRelator { at } => Error::EmptyRelator { at: fix(at) },
            Error::DuplicateRelator { first, at } => Error::DuplicateRelator { first, at: fix(at) },
            Error::Syntax { message, at } => Error::Syntax {
                message,
                at: fix(at),
            },
            Error::AmbiguousCompactForm { text, at } => {
                Error::AmbiguousCompactForm { text, at: fix(at) }
            }
            Error::UndeclaredVariable { name, at } => {
                Error::UndeclaredVariable { name, at: fix(at) }
            }
            other => other,
        }
    }
}
