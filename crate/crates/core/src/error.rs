use thiserror::Error;

use crate::symbol::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("`#` (empty language) may only be used as the whole expression (byte {offset})")]
    NestedEmpty { offset: usize },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("invalid glyph {0:?}; symbols must be in [a-z0-9]")]
    BadGlyph(char),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("deadline exceeded")]
    Timeout,

    #[error("the language is empty")]
    EmptyLanguage,

    #[error("inputs share the word `{}`", .0.display_or_eps())]
    OverlappingInputs(Word),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
