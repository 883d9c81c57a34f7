//! Corpus files: blank-line separated blocks of `# ::key value` metadata
//! lines followed by one Penman graph.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use crate::error::ParseError;
use crate::graph::{AmrGraph, Metadata};
use crate::penman::{parse_penman, serialize_penman};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    /// Source sentence with HTML tags removed.
    pub sentence: String,
    pub graph: AmrGraph,
    pub gold: bool,
}

impl Document {
    pub fn new(id: impl Into<String>, sentence: impl Into<String>, mut graph: AmrGraph) -> Self {
        let id = id.into();
        let sentence = sentence.into();
        graph.metadata.id = id.clone();
        graph.metadata.snt = sentence.clone();
        Document {
            id,
            sentence,
            graph,
            gold: false,
        }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.sentence.split_whitespace()
    }

    /// The block text for this document, metadata first.
    pub fn to_block(&self, indent: bool) -> String {
        let mut out = String::new();
        if !self.id.is_empty() {
            out.push_str(&format!("# ::id {}\n", self.id));
        }
        out.push_str(&format!("# ::snt {}\n", self.sentence));
        let meta = &self.graph.metadata;
        if let Some(tokens) = &meta.tokens {
            out.push_str(&format!("# ::tok {}\n", tokens.join(" ")));
        }
        if let Some(alignments) = &meta.alignments {
            out.push_str(&format!("# ::alignments {alignments}\n"));
        }
        for (key, value) in &meta.extra {
            if value.is_empty() {
                out.push_str(&format!("# ::{key}\n"));
            } else {
                out.push_str(&format!("# ::{key} {value}\n"));
            }
        }
        out.push_str(&serialize_penman(&self.graph, indent));
        out
    }
}

/// Serializes documents as a corpus file.
pub fn write_corpus<'a>(docs: impl IntoIterator<Item = &'a Document>, indent: bool) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&doc.to_block(indent));
        out.push_str("\n\n");
    }
    out
}

static HTML_TAG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"<[^<>]*>").unwrap());
static SPACES: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\s{2,}").unwrap());

/// Removes `<...>` spans and collapses the whitespace left behind.
pub fn strip_html(sentence: &str) -> String {
    let stripped = HTML_TAG.replace_all(sentence, "");
    SPACES.replace_all(stripped.trim(), " ").into_owned()
}

/// A block that failed to parse.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct BlockError {
    /// 0-based index of the block in the file.
    pub block: usize,
    /// 1-based line in the file where the error was detected.
    pub line: usize,
    pub id: Option<String>,
    pub error: ParseError,
}

impl fmt::Display for BlockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}", self.line)?;
        if let Some(id) = &self.id {
            write!(f, " ({id})")?;
        }
        write!(f, ": {}", self.error)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// Every readable document of a file plus the blocks that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub errors: Vec<BlockError>,
}

pub fn read_corpus(path: impl AsRef<Path>) -> io::Result<Corpus> {
    let file = File::open(path)?;
    collect(CorpusReader::new(BufReader::new(file)))
}

pub fn parse_corpus(text: &str) -> Corpus {
    collect(CorpusReader::new(text.as_bytes())).expect("reading from memory cannot fail")
}

fn collect<R: BufRead>(reader: CorpusReader<R>) -> io::Result<Corpus> {
    let mut corpus = Corpus::default();
    for item in reader {
        match item {
            Ok(doc) => corpus.documents.push(doc),
            Err(CorpusError::Block(e)) => corpus.errors.push(e),
            Err(CorpusError::Io(e)) => return Err(e),
        }
    }
    Ok(corpus)
}

/// Streams documents one block at a time.
pub struct CorpusReader<R> {
    lines: io::Lines<R>,
    line_no: usize,
    block: usize,
    done: bool,
}

impl<R: BufRead> CorpusReader<R> {
    pub fn new(reader: R) -> Self {
        CorpusReader {
            lines: reader.lines(),
            line_no: 0,
            block: 0,
            done: false,
        }
    }

    /// Next non-empty block as (first line number, lines).
    fn next_block(&mut self) -> io::Result<Option<(usize, Vec<String>)>> {
        let mut lines = Vec::new();
        let mut first = 0;
        loop {
            match self.lines.next() {
                None => {
                    self.done = true;
                    break;
                }
                Some(line) => {
                    let line = line?;
                    self.line_no += 1;
                    if line.trim().is_empty() {
                        if lines.is_empty() {
                            continue;
                        }
                        break;
                    }
                    if lines.is_empty() {
                        first = self.line_no;
                    }
                    lines.push(line);
                }
            }
        }
        Ok((!lines.is_empty()).then_some((first, lines)))
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<Document, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.done {
                return None;
            }
            let (first, lines) = match self.next_block() {
                Ok(Some(b)) => b,
                Ok(None) => return None,
                Err(e) => return Some(Err(e.into())),
            };
            let index = self.block;
            self.block += 1;
            if let Some(doc) = parse_block(index, first, &lines).transpose() {
                return Some(doc.map_err(CorpusError::from));
            }
        }
    }
}

/// Parses one block; `Ok(None)` for comment-only blocks such as file headers.
fn parse_block(
    index: usize,
    first_line: usize,
    lines: &[String],
) -> Result<Option<Document>, BlockError> {
    let mut meta = Metadata::default();
    let mut has_meta = false;
    let mut graph_lines = Vec::new();
    let mut graph_start = first_line;
    for (offset, line) in lines.iter().enumerate() {
        let trimmed = line.trim_start();
        if graph_lines.is_empty() && trimmed.starts_with('#') {
            has_meta |= parse_metadata_line(trimmed, &mut meta);
        } else {
            if graph_lines.is_empty() {
                graph_start = first_line + offset;
            }
            graph_lines.push(line.as_str());
        }
    }
    let id = (!meta.id.is_empty()).then(|| meta.id.clone());
    if graph_lines.is_empty() {
        if !has_meta {
            return Ok(None);
        }
        return Err(BlockError {
            block: index,
            line: first_line,
            id,
            error: ParseError::Empty,
        });
    }
    let text = graph_lines.join("\n");
    let mut graph = parse_penman(&text).map_err(|error| BlockError {
        block: index,
        line: graph_start + error.pos().map_or(0, |p| p.line - 1),
        id: id.clone(),
        error,
    })?;
    let sentence = strip_html(&meta.snt);
    meta.snt = sentence.clone();
    if meta.id.is_empty() {
        meta.id = format!("#{}", index + 1);
    }
    let id = meta.id.clone();
    graph.metadata = meta;
    Ok(Some(Document {
        id,
        sentence,
        graph,
        gold: false,
    }))
}

/// Reads `# ::key value ::key2 value2` into `meta`. Returns whether the line
/// carried any key.
fn parse_metadata_line(line: &str, meta: &mut Metadata) -> bool {
    let body = line.trim_start_matches('#').trim();
    if !body.starts_with("::") {
        return false;
    }
    let mut rest = &body[2..];
    loop {
        let (key, after_key) = match rest.find(char::is_whitespace) {
            Some(i) => (&rest[..i], rest[i..].trim_start()),
            None => (rest, ""),
        };
        // Sentence-like values run to the end of the line.
        let (value, next) = if matches!(key, "snt" | "tok") {
            (after_key, None)
        } else {
            match after_key.find(" ::") {
                Some(i) => (&after_key[..i], Some(&after_key[i + 3..])),
                None if after_key.starts_with("::") => ("", Some(&after_key[2..])),
                None => (after_key, None),
            }
        };
        let value = value.trim();
        match key {
            "id" => meta.id = value.to_string(),
            "snt" => meta.snt = value.to_string(),
            "tok" => meta.tokens = Some(value.split_whitespace().map(String::from).collect()),
            "alignments" => meta.alignments = Some(value.to_string()),
            _ => meta.extra.push((key.to_string(), value.to_string())),
        }
        match next {
            Some(n) => rest = n,
            None => return true,
        }
    }
}
