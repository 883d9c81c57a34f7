//! Tokenizer shared by the Penman reader, the seq2seq tree reader and the
//! repair heuristics.

use std::fmt;

/// 1-based line/column position in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    LParen,
    RParen,
    Slash,
    /// Relation label without the leading colon.
    Relation(String),
    /// Contents between the quotes, escapes kept verbatim.
    Quoted {
        content: String,
        closed: bool,
    },
    Symbol(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
    /// Byte range in the source text.
    pub start: usize,
    pub end: usize,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || c == '(' || c == ')' || c == '"'
}

/// Splits `text` into tokens. Never fails: an unterminated quoted string is
/// reported through `closed: false` and runs to the end of the input.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut line_start = 0;

    while let Some(&(i, c)) = chars.peek() {
        let pos = Pos {
            line,
            column: text[line_start..i].chars().count() + 1,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = i + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = |kind| Token {
            kind,
            pos,
            start: i,
            end: i + c.len_utf8(),
        };
        match c {
            '(' => {
                chars.next();
                tokens.push(single(TokenKind::LParen));
            }
            ')' => {
                chars.next();
                tokens.push(single(TokenKind::RParen));
            }
            '/' => {
                chars.next();
                tokens.push(single(TokenKind::Slash));
            }
            '"' => {
                chars.next();
                let mut end = text.len();
                let mut closed = false;
                let mut escaped = false;
                for (j, d) in chars.by_ref() {
                    if d == '\n' {
                        line += 1;
                        line_start = j + 1;
                    }
                    if escaped {
                        escaped = false;
                    } else if d == '\\' {
                        escaped = true;
                    } else if d == '"' {
                        end = j + 1;
                        closed = true;
                        break;
                    }
                }
                let content_end = if closed { end - 1 } else { end };
                tokens.push(Token {
                    kind: TokenKind::Quoted {
                        content: text[i + 1..content_end].to_string(),
                        closed,
                    },
                    pos,
                    start: i,
                    end,
                });
            }
            _ => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if is_delimiter(d) || (d == '/' && j != i) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                let word = &text[i..end];
                let kind = match word.strip_prefix(':') {
                    Some(rel) => TokenKind::Relation(rel.to_string()),
                    None => TokenKind::Symbol(word.to_string()),
                };
                tokens.push(Token {
                    kind,
                    pos,
                    start: i,
                    end,
                });
            }
        }
    }
    tokens
}

/// Numbers, `-` and `+` are attribute constants when they appear unquoted.
pub fn is_numeric_or_sign(s: &str) -> bool {
    if s == "-" || s == "+" {
        return true;
    }
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    !body.is_empty()
        && body.chars().next().is_some_and(|c| c.is_ascii_digit())
        && body.chars().all(|c| c.is_ascii_digit() || c == '.')
        && body.matches('.').count() <= 1
        && !body.ends_with('.')
}

/// Bare symbols that AMR annotation uses as attribute values.
pub const SYMBOL_CONSTANTS: &[&str] = &["imperative", "expressive", "interrogative"];

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn penman_tokens() {
        assert_eq!(
            kinds("(c/cell :ARG0 \"a b\")"),
            vec![
                TokenKind::LParen,
                TokenKind::Symbol("c".into()),
                TokenKind::Slash,
                TokenKind::Symbol("cell".into()),
                TokenKind::Relation("ARG0".into()),
                TokenKind::Quoted {
                    content: "a b".into(),
                    closed: true
                },
                TokenKind::RParen,
            ]
        );
    }

    #[test]
    fn unterminated_quote_runs_to_end() {
        let toks = tokenize(":op1 \"Crk))");
        assert_eq!(
            toks[1].kind,
            TokenKind::Quoted {
                content: "Crk))".into(),
                closed: false
            }
        );
    }

    #[test]
    fn escaped_quote_stays_inside() {
        let toks = tokenize(r#""a\"b" x"#);
        assert_eq!(toks.len(), 2);
        assert_eq!(
            toks[0].kind,
            TokenKind::Quoted {
                content: r#"a\"b"#.into(),
                closed: true
            }
        );
    }

    #[test]
    fn positions_are_one_based() {
        let toks = tokenize("(a\n  :x b)");
        assert_eq!(toks[2].pos, Pos { line: 2, column: 3 });
    }

    #[test]
    fn numeric_detection() {
        for s in ["5", "-", "+", "3.25", "-7"] {
            assert!(is_numeric_or_sign(s), "{s}");
        }
        for s in ["cell", "1990-05", "3.", "a1", ""] {
            assert!(!is_numeric_or_sign(s), "{s}");
        }
    }
}
