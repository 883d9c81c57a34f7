//! Node-to-token alignments keyed by tree path.
//!
//! Text form: space-separated `start-end|path[+path…]` items. Spans are
//! half-open token ranges; a path is dot-joined child indices and the empty
//! path is the root.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::seq::tree::SeqTree;

pub type Path = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlignmentError {
    #[error("`{item}`: no node at path `{path}`")]
    BadPath { item: String, path: String },
    #[error("`{item}`: expected `start-end|path` with start <= end")]
    BadSpan { item: String },
    #[error("span {start}-{end} lies outside a {tokens}-token sentence")]
    OutOfBounds {
        start: usize,
        end: usize,
        tokens: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    spans: BTreeMap<Path, Span>,
}

pub fn format_path(path: &[usize]) -> String {
    path.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(".")
}

fn parse_path(text: &str) -> Option<Path> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split('.').map(|p| p.parse().ok()).collect()
}

impl Alignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a span; a path aligned twice keeps the earlier start.
    pub fn insert(&mut self, path: Path, span: Span) {
        self.spans
            .entry(path)
            .and_modify(|s| {
                if span.start < s.start {
                    *s = span;
                }
            })
            .or_insert(span);
    }

    pub fn get(&self, path: &[usize]) -> Option<Span> {
        self.spans.get(path).copied()
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &Span)> {
        self.spans.iter()
    }

    pub fn check_bounds(&self, tokens: usize) -> Result<(), AlignmentError> {
        match self.spans.values().find(|s| s.end > tokens) {
            Some(s) => Err(AlignmentError::OutOfBounds {
                start: s.start,
                end: s.end,
                tokens,
            }),
            None => Ok(()),
        }
    }

    /// Same spans under new paths; `relocate` maps old paths to new ones.
    pub(crate) fn remap(&self, relocate: impl Fn(&[usize]) -> Path) -> Alignment {
        Alignment {
            spans: self.spans.iter().map(|(p, s)| (relocate(p), *s)).collect(),
        }
    }
}

impl fmt::Display for Alignment {
    /// One item per path, in path order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .spans
            .iter()
            .map(|(p, s)| format!("{}-{}|{}", s.start, s.end, format_path(p)))
            .collect();
        f.write_str(&items.join(" "))
    }
}

/// Parses one alignment line and checks every path against `tree`.
pub fn parse_alignments(text: &str, tree: &SeqTree) -> Result<Alignment, AlignmentError> {
    let mut alignment = Alignment::new();
    for item in text.split_whitespace() {
        let bad_span = || AlignmentError::BadSpan {
            item: item.to_string(),
        };
        let (span, paths) = item.split_once('|').ok_or_else(bad_span)?;
        let (start, end) = span.split_once('-').ok_or_else(bad_span)?;
        let span = Span {
            start: start.parse().map_err(|_| bad_span())?,
            end: end.parse().map_err(|_| bad_span())?,
        };
        if span.start > span.end {
            return Err(bad_span());
        }
        for path_text in paths.split('+') {
            let path = parse_path(path_text)
                .filter(|p| tree.get(p).is_some())
                .ok_or_else(|| AlignmentError::BadPath {
                    item: item.to_string(),
                    path: path_text.to_string(),
                })?;
            alignment.insert(path, span);
        }
    }
    Ok(alignment)
}

/// Alignment lines of a file, one per document; `#` lines are comments.
pub fn alignment_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}
