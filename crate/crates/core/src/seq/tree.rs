use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::lex::{self, is_numeric_or_sign, Token, TokenKind, SYMBOL_CONSTANTS};
use crate::penman::separator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    /// A node printed in parentheses.
    Concept,
    /// A bare concept standing for a re-entrant node.
    Reference,
    /// An attribute value, label in its printed form (`"Crk"`, `-`, `5`).
    Constant,
}

/// Ordered, variable-free tree used as the seq2seq target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqTree {
    pub label: String,
    pub kind: SeqKind,
    /// (relation without colon, child)
    pub children: Vec<(String, SeqTree)>,
}

impl SeqTree {
    pub fn concept(label: impl Into<String>) -> Self {
        SeqTree {
            label: label.into(),
            kind: SeqKind::Concept,
            children: Vec::new(),
        }
    }

    pub fn reference(label: impl Into<String>) -> Self {
        SeqTree {
            label: label.into(),
            kind: SeqKind::Reference,
            children: Vec::new(),
        }
    }

    pub fn constant(label: impl Into<String>) -> Self {
        SeqTree {
            label: label.into(),
            kind: SeqKind::Constant,
            children: Vec::new(),
        }
    }

    pub fn with_child(mut self, relation: impl Into<String>, child: SeqTree) -> Self {
        self.children.push((relation.into(), child));
        self
    }

    pub fn is_leaf_reference(&self) -> bool {
        self.kind == SeqKind::Reference
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(_, c)| c.node_count())
            .sum::<usize>()
    }

    /// The node at `path` (child indices from the root).
    pub fn get(&self, path: &[usize]) -> Option<&SeqTree> {
        path.iter()
            .try_fold(self, |node, &i| node.children.get(i).map(|(_, c)| c))
    }

    /// Visits every node in pre-order with its path.
    pub fn for_each_preorder<'a>(&'a self, f: &mut impl FnMut(&[usize], &'a SeqTree)) {
        fn go<'a>(
            node: &'a SeqTree,
            path: &mut Vec<usize>,
            f: &mut impl FnMut(&[usize], &'a SeqTree),
        ) {
            f(path, node);
            for (i, (_, child)) in node.children.iter().enumerate() {
                path.push(i);
                go(child, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }
}

impl fmt::Display for SeqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tree_to_text(self, false))
    }
}

/// Prints a tree; concept nodes are parenthesized, references and constants
/// are bare.
pub fn tree_to_text(tree: &SeqTree, indent: bool) -> String {
    let mut out = String::new();
    write_tree(tree, indent, 1, &mut out);
    out
}

fn write_tree(tree: &SeqTree, indent: bool, depth: usize, out: &mut String) {
    if tree.kind != SeqKind::Concept {
        out.push_str(&tree.label);
        return;
    }
    out.push('(');
    out.push_str(&tree.label);
    for (relation, child) in &tree.children {
        separator(indent, depth, out);
        out.push(':');
        out.push_str(relation);
        out.push(' ');
        write_tree(child, indent, depth + 1, out);
    }
    out.push(')');
}

/// Whether a bare token in tree text is an attribute constant rather than a
/// reference.
pub fn is_constant_token(token: &str) -> bool {
    token.starts_with('"') || is_numeric_or_sign(token) || SYMBOL_CONSTANTS.contains(&token)
}

/// Parses tree text. Quoted strings, numbers, `-`, `+` and the AMR mode
/// symbols are constants; any other bare token is a reference.
pub fn text_to_tree(text: &str) -> Result<SeqTree, ParseError> {
    let tokens = lex::tokenize(text);
    let mut next = 0;
    let tree = parse_tree(&tokens, &mut next)?;
    match tokens.get(next) {
        None => Ok(tree),
        Some(t) if t.kind == TokenKind::RParen => Err(ParseError::UnbalancedParens(t.pos)),
        Some(t) => Err(unexpected(t)),
    }
}

fn unexpected(tok: &Token) -> ParseError {
    ParseError::Unexpected {
        found: match &tok.kind {
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
            TokenKind::Slash => "/".into(),
            TokenKind::Relation(r) => format!(":{r}"),
            TokenKind::Quoted { content, .. } => format!("\"{content}\""),
            TokenKind::Symbol(s) => s.clone(),
        },
        pos: tok.pos,
    }
}

fn parse_tree(tokens: &[Token], next: &mut usize) -> Result<SeqTree, ParseError> {
    let open = match tokens.get(*next) {
        None => return Err(ParseError::Empty),
        Some(t) if t.kind == TokenKind::LParen => t,
        Some(t) => return Err(unexpected(t)),
    };
    *next += 1;
    let label = match tokens.get(*next) {
        Some(Token {
            kind: TokenKind::Symbol(s),
            ..
        }) => s.clone(),
        Some(t) if matches!(t.kind, TokenKind::RParen | TokenKind::Relation(_)) => {
            return Err(ParseError::EmptyConcept(t.pos))
        }
        Some(t) => return Err(unexpected(t)),
        None => return Err(ParseError::UnbalancedParens(open.pos)),
    };
    *next += 1;
    let mut tree = SeqTree::concept(label);
    loop {
        let tok = tokens
            .get(*next)
            .ok_or(ParseError::UnbalancedParens(open.pos))?;
        *next += 1;
        let relation = match &tok.kind {
            TokenKind::RParen => return Ok(tree),
            TokenKind::Relation(r) if !r.is_empty() => r.clone(),
            _ => return Err(unexpected(tok)),
        };
        let dangling = || ParseError::DanglingRelation {
            relation: relation.clone(),
            pos: tok.pos,
        };
        let target = tokens.get(*next).ok_or_else(dangling)?;
        let child = match &target.kind {
            TokenKind::LParen => parse_tree(tokens, next)?,
            TokenKind::Quoted { content, closed } => {
                if !closed {
                    return Err(ParseError::UnterminatedString(target.pos));
                }
                *next += 1;
                SeqTree::constant(format!("\"{content}\""))
            }
            TokenKind::Symbol(s) => {
                *next += 1;
                if is_constant_token(s) {
                    SeqTree::constant(s.clone())
                } else {
                    SeqTree::reference(s.clone())
                }
            }
            TokenKind::RParen | TokenKind::Relation(_) => return Err(dangling()),
            TokenKind::Slash => return Err(unexpected(target)),
        };
        tree.children.push((relation, child));
    }
}
