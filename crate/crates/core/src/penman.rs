//! Penman notation reader and writer.

use indexmap::IndexMap;

use crate::error::ParseError;
use crate::graph::{AmrGraph, Constant, Edge, Metadata, Target, WalkChild, WalkNode};
use crate::lex::{self, Pos, Token, TokenKind};

const INDENT: &str = "    ";

/// Parses one parenthesized Penman expression.
///
/// Bare symbols that name a variable defined anywhere in the expression are
/// re-entrancies. Quoted strings, numbers, `-`, `+` and other undefined bare
/// symbols are attribute constants, except that an undefined symbol shaped
/// like a variable (`x`, `p2`) is reported as an undefined reference.
pub fn parse_penman(text: &str) -> Result<AmrGraph, ParseError> {
    let tokens = lex::tokenize(text);
    let mut parser = Parser {
        tokens: &tokens,
        next: 0,
        nodes: IndexMap::new(),
        edges: Vec::new(),
        bare: Vec::new(),
    };
    let root = parser.node()?;
    if let Some(tok) = parser.peek() {
        return Err(match tok.kind {
            TokenKind::RParen => ParseError::UnbalancedParens(tok.pos),
            _ => unexpected(tok),
        });
    }

    let Parser {
        nodes,
        mut edges,
        bare,
        ..
    } = parser;
    for (edge, symbol, pos) in bare {
        edges[edge].target = if nodes.contains_key(&symbol) {
            Target::Var(symbol)
        } else if looks_like_variable(&symbol) {
            return Err(ParseError::UndefinedVariableReference { var: symbol, pos });
        } else {
            Target::Const(Constant::bare(symbol))
        };
    }
    Ok(AmrGraph {
        root,
        nodes,
        edges,
        metadata: Metadata::default(),
    })
}

fn looks_like_variable(symbol: &str) -> bool {
    let mut chars = symbol.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_digit())
}

fn unexpected(tok: &Token) -> ParseError {
    let found = match &tok.kind {
        TokenKind::LParen => "(".to_string(),
        TokenKind::RParen => ")".to_string(),
        TokenKind::Slash => "/".to_string(),
        TokenKind::Relation(r) => format!(":{r}"),
        TokenKind::Quoted { content, .. } => format!("\"{content}\""),
        TokenKind::Symbol(s) => s.clone(),
    };
    ParseError::Unexpected {
        found,
        pos: tok.pos,
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    next: usize,
    nodes: IndexMap<String, String>,
    edges: Vec<Edge>,
    /// Unresolved bare-symbol targets: (edge index, symbol, position).
    bare: Vec<(usize, String, Pos)>,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.next)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let tok = self.tokens.get(self.next);
        self.next += 1;
        tok
    }

    fn end_pos(&self) -> Pos {
        self.tokens.last().map(|t| t.pos).unwrap_or_default()
    }

    fn node(&mut self) -> Result<String, ParseError> {
        let open = match self.bump() {
            None => return Err(ParseError::Empty),
            Some(t) if t.kind == TokenKind::LParen => t,
            Some(t) => return Err(unexpected(t)),
        };
        let var = match self.bump() {
            Some(Token {
                kind: TokenKind::Symbol(s),
                ..
            }) => s.clone(),
            Some(t) if t.kind == TokenKind::RParen => return Err(ParseError::EmptyConcept(t.pos)),
            Some(t) => return Err(unexpected(t)),
            None => return Err(ParseError::UnbalancedParens(open.pos)),
        };
        match self.bump() {
            Some(t) if t.kind == TokenKind::Slash => {}
            Some(t) if matches!(t.kind, TokenKind::RParen | TokenKind::Relation(_)) => {
                return Err(ParseError::EmptyConcept(t.pos))
            }
            Some(t) => return Err(unexpected(t)),
            None => return Err(ParseError::UnbalancedParens(open.pos)),
        }
        let concept = match self.bump() {
            Some(Token {
                kind: TokenKind::Symbol(s),
                ..
            }) => s.clone(),
            Some(t) if matches!(t.kind, TokenKind::RParen | TokenKind::Relation(_)) => {
                return Err(ParseError::EmptyConcept(t.pos))
            }
            Some(t) => return Err(unexpected(t)),
            None => return Err(ParseError::EmptyConcept(self.end_pos())),
        };
        if self.nodes.contains_key(&var) {
            return Err(ParseError::DuplicateVariableDefinition { var, pos: open.pos });
        }
        self.nodes.insert(var.clone(), concept);

        loop {
            let tok = self.bump().ok_or(ParseError::UnbalancedParens(open.pos))?;
            let relation = match &tok.kind {
                TokenKind::RParen => return Ok(var),
                TokenKind::Relation(r) if !r.is_empty() => r.clone(),
                _ => return Err(unexpected(tok)),
            };
            let dangling = ParseError::DanglingRelation {
                relation: relation.clone(),
                pos: tok.pos,
            };
            let edge = self.edges.len();
            self.edges
                .push(Edge::new(var.clone(), relation, Target::Var(String::new())));
            let target = self.peek().ok_or_else(|| dangling.clone())?;
            match &target.kind {
                TokenKind::LParen => {
                    let child = self.node()?;
                    self.edges[edge].target = Target::Var(child);
                }
                TokenKind::Quoted { content, closed } => {
                    if !closed {
                        return Err(ParseError::UnterminatedString(target.pos));
                    }
                    self.next += 1;
                    self.edges[edge].target = Target::Const(Constant::quoted(content.clone()));
                }
                TokenKind::Symbol(s) => {
                    self.next += 1;
                    self.bare.push((edge, s.clone(), target.pos));
                }
                TokenKind::RParen | TokenKind::Relation(_) => return Err(dangling),
                TokenKind::Slash => return Err(unexpected(target)),
            }
        }
    }
}

/// Writes `graph` in Penman notation.
///
/// Each variable is defined at its first appearance in a depth-first walk
/// following stored edge order; later appearances are bare variables. With
/// `indent` every relation starts a new line.
pub fn serialize_penman(graph: &AmrGraph, indent: bool) -> String {
    let mut out = String::new();
    write_node(&graph.walk(), indent, 1, &mut out);
    out
}

fn write_node(node: &WalkNode, indent: bool, depth: usize, out: &mut String) {
    out.push('(');
    out.push_str(&node.var);
    out.push_str(" / ");
    out.push_str(&node.concept);
    for child in &node.children {
        separator(indent, depth, out);
        out.push(':');
        out.push_str(&child.relation);
        out.push(' ');
        match &child.child {
            WalkChild::Node(n) => write_node(n, indent, depth + 1, out),
            WalkChild::Ref(v) => out.push_str(v),
            WalkChild::Const(c) => out.push_str(&c.to_string()),
        }
    }
    out.push(')');
}

pub(crate) fn separator(indent: bool, depth: usize, out: &mut String) {
    if indent {
        out.push('\n');
        for _ in 0..depth {
            out.push_str(INDENT);
        }
    } else {
        out.push(' ');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::CRK_CAS_PENMAN;

    #[test]
    fn minimal_graph() {
        let g = parse_penman("(c / cell)").unwrap();
        assert_eq!(g.root, "c");
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.concept("c"), Some("cell"));
        assert!(g.edges.is_empty());
        assert_eq!(serialize_penman(&g, false), "(c / cell)");
        assert_eq!(serialize_penman(&g, true), "(c / cell)");
    }

    #[test]
    fn figure_graph_counts() {
        let g = parse_penman(CRK_CAS_PENMAN).unwrap();
        assert_eq!(g.nodes.len(), 9);
        assert_eq!(g.edges.len(), 11);
        let consts: Vec<_> = g.edges.iter().filter_map(|e| e.target.as_const()).collect();
        assert_eq!(
            consts,
            vec![&Constant::quoted("Crk"), &Constant::quoted("CAS")]
        );
        assert!(g
            .edges
            .contains(&Edge::new("m", "ARG0", Target::Var("c".into()))));
        assert!(g.validate().is_empty());
    }

    #[test]
    fn reentrancy_serializes_as_bare_variable() {
        let g = parse_penman(CRK_CAS_PENMAN).unwrap();
        let text = serialize_penman(&g, false);
        assert!(text.contains("(m / migrate-01 :ARG0 c)"), "{text}");
        assert_eq!(parse_penman(&text).unwrap(), g);
    }

    #[test]
    fn indented_output_reparses() {
        let g = parse_penman(CRK_CAS_PENMAN).unwrap();
        let text = serialize_penman(&g, true);
        assert!(text.lines().count() > 5);
        assert_eq!(parse_penman(&text).unwrap(), g);
    }

    #[test]
    fn attribute_constants() {
        let g =
            parse_penman("(g / go-02 :polarity - :quant 5 :mode imperative :op1 \"x y\")").unwrap();
        let consts: Vec<_> = g
            .edges
            .iter()
            .map(|e| e.target.as_const().unwrap().clone())
            .collect();
        assert_eq!(
            consts,
            vec![
                Constant::bare("-"),
                Constant::bare("5"),
                Constant::bare("imperative"),
                Constant::quoted("x y"),
            ]
        );
    }

    #[test]
    fn reference_before_definition_resolves() {
        let g = parse_penman("(a / and :op1 b :op2 (b / boy))").unwrap();
        assert_eq!(g.edges[0].target, Target::Var("b".into()));
    }

    #[test]
    fn dangling_relation() {
        let err = parse_penman("(b / bind-01 :ARG1").unwrap_err();
        assert!(
            matches!(err, ParseError::DanglingRelation { .. }),
            "{err:?}"
        );
        let err = parse_penman("(b / bind-01 :ARG1)").unwrap_err();
        assert!(
            matches!(err, ParseError::DanglingRelation { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn unbalanced() {
        assert!(matches!(
            parse_penman("(b / bind-01 :ARG1 (c / cell)").unwrap_err(),
            ParseError::UnbalancedParens(_)
        ));
        assert!(matches!(
            parse_penman("(c / cell))").unwrap_err(),
            ParseError::UnbalancedParens(_)
        ));
    }

    #[test]
    fn empty_concepts() {
        for text in ["(c / )", "(c)", "()", "(c :ARG0 (d / dog))"] {
            assert!(
                matches!(parse_penman(text).unwrap_err(), ParseError::EmptyConcept(_)),
                "{text}"
            );
        }
    }

    #[test]
    fn duplicate_definition() {
        let err = parse_penman("(c / cell :ARG0 (c / dog))").unwrap_err();
        assert!(
            matches!(err, ParseError::DuplicateVariableDefinition { ref var, .. } if var == "c")
        );
    }

    #[test]
    fn undefined_variable() {
        let err = parse_penman("(c / cell :ARG0 x2)").unwrap_err();
        assert!(
            matches!(err, ParseError::UndefinedVariableReference { ref var, .. } if var == "x2")
        );
    }

    #[test]
    fn empty_and_trailing() {
        assert_eq!(parse_penman("  ").unwrap_err(), ParseError::Empty);
        assert!(matches!(
            parse_penman("(c / cell) (d / dog)").unwrap_err(),
            ParseError::Unexpected { .. }
        ));
    }
}
