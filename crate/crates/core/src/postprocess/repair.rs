//! Text-level repair of malformed tree output.
//!
//! Edits are applied one at a time and the text is re-tokenized after each:
//! close an unterminated quote, then repeatedly delete the first token the
//! tree grammar cannot accept, then append the missing `)`.

use thiserror::Error;

use crate::error::ParseError;
use crate::lex::{tokenize, Token, TokenKind};
use crate::seq::tree::text_to_tree;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot repair output: {0}")]
pub struct Unrepairable(pub ParseError);

/// Returns `text` unchanged when it already parses.
pub fn repair(text: &str) -> Result<String, Unrepairable> {
    if text_to_tree(text).is_ok() {
        return Ok(text.to_string());
    }
    let mut text = close_quote(text);
    let missing = loop {
        let tokens = tokenize(&text);
        match scan(&tokens) {
            Scan::Delete(i) => delete_token(&mut text, &tokens[i]),
            Scan::Complete(depth) => break depth,
            Scan::Hopeless(err) => return Err(Unrepairable(err)),
        }
    };
    text.push_str(&")".repeat(missing));
    text_to_tree(&text).map_err(Unrepairable)?;
    Ok(text)
}

/// Ends an unterminated string at the next whitespace or parenthesis.
fn close_quote(text: &str) -> String {
    let tokens = tokenize(text);
    let Some(Token {
        kind: TokenKind::Quoted { closed: false, .. },
        start,
        ..
    }) = tokens.last()
    else {
        return text.to_string();
    };
    let body = start + 1;
    let end = text[body..]
        .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
        .map_or(text.len(), |i| body + i);
    let mut out = text.to_string();
    out.insert(end, '"');
    out
}

/// Removes a token together with the whitespace before it.
fn delete_token(text: &mut String, tok: &Token) {
    let from = text[..tok.start].trim_end().len();
    text.replace_range(from..tok.end, "");
}

enum Scan {
    Delete(usize),
    /// Everything accepted; this many `)` are missing.
    Complete(usize),
    Hopeless(ParseError),
}

#[derive(Clone, Copy, PartialEq)]
enum State {
    Start,
    Concept,
    RelationOrClose,
    Target,
    Done,
}

/// Walks the tree grammar and reports the first token to delete.
fn scan(tokens: &[Token]) -> Scan {
    let mut state = State::Start;
    let mut depth = 0usize;
    let mut last_open = 0;
    let mut last_relation = 0;
    let mut root_close = 0;
    for (i, tok) in tokens.iter().enumerate() {
        state = match (state, &tok.kind) {
            (State::Start, TokenKind::LParen) => {
                depth = 1;
                last_open = i;
                State::Concept
            }
            (State::Start, _) => {
                return Scan::Hopeless(ParseError::Unexpected {
                    found: describe(tok),
                    pos: tok.pos,
                })
            }
            (State::Concept, TokenKind::Symbol(_)) => State::RelationOrClose,
            // `(` without a concept
            (State::Concept, _) => return Scan::Delete(last_open),
            (State::RelationOrClose, TokenKind::Relation(r)) if !r.is_empty() => {
                last_relation = i;
                State::Target
            }
            (State::RelationOrClose, TokenKind::RParen) => {
                depth -= 1;
                if depth == 0 {
                    root_close = i;
                    State::Done
                } else {
                    State::RelationOrClose
                }
            }
            (State::RelationOrClose, _) => return Scan::Delete(i),
            (State::Target, TokenKind::LParen) => {
                depth += 1;
                last_open = i;
                State::Concept
            }
            (State::Target, TokenKind::Symbol(_) | TokenKind::Quoted { .. }) => {
                State::RelationOrClose
            }
            (State::Target, TokenKind::Slash) => return Scan::Delete(i),
            // unfinished edge
            (State::Target, _) => return Scan::Delete(last_relation),
            (State::Done, TokenKind::RParen) => return Scan::Delete(i),
            // the root was closed early
            (State::Done, _) => return Scan::Delete(root_close),
        };
    }
    match state {
        State::Start => Scan::Hopeless(ParseError::Empty),
        State::Concept => Scan::Delete(last_open),
        State::Target => Scan::Delete(last_relation),
        State::RelationOrClose | State::Done => Scan::Complete(depth),
    }
}

fn describe(tok: &Token) -> String {
    match &tok.kind {
        TokenKind::LParen => "(".into(),
        TokenKind::RParen => ")".into(),
        TokenKind::Slash => "/".into(),
        TokenKind::Relation(r) => format!(":{r}"),
        TokenKind::Quoted { content, .. } => format!("\"{content}"),
        TokenKind::Symbol(s) => s.clone(),
    }
}
