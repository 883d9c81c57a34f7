use thiserror::Error;

use crate::lex::Pos;

/// Errors raised while reading Penman or seq2seq tree text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unbalanced parentheses at {0}")]
    UnbalancedParens(Pos),
    #[error("empty concept at {0}")]
    EmptyConcept(Pos),
    #[error("variable `{var}` defined twice (second definition at {pos})")]
    DuplicateVariableDefinition { var: String, pos: Pos },
    #[error("relation `:{relation}` has no target at {pos}")]
    DanglingRelation { relation: String, pos: Pos },
    #[error("reference to undefined variable `{var}` at {pos}")]
    UndefinedVariableReference { var: String, pos: Pos },
    #[error("unterminated string at {0}")]
    UnterminatedString(Pos),
    #[error("unexpected `{found}` at {pos}")]
    Unexpected { found: String, pos: Pos },
}

impl ParseError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            ParseError::Empty => None,
            ParseError::UnbalancedParens(p)
            | ParseError::EmptyConcept(p)
            | ParseError::UnterminatedString(p) => Some(*p),
            ParseError::DuplicateVariableDefinition { pos, .. }
            | ParseError::DanglingRelation { pos, .. }
            | ParseError::UndefinedVariableReference { pos, .. }
            | ParseError::Unexpected { pos, .. } => Some(*pos),
        }
    }
}
