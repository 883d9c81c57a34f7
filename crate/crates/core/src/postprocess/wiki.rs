//! Wikification by gold-corpus link frequency.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::Document;
use crate::graph::{AmrGraph, Constant, Edge, Target};
use crate::seq::codec::WIKI;

/// A link is added when its share of a name's occurrences exceeds this.
pub const WIKI_THRESHOLD: f64 = 0.5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameStats {
    pub total: u64,
    pub links: BTreeMap<String, u64>,
}

impl NameStats {
    /// Most frequent link; the smallest link wins ties.
    pub fn best_link(&self) -> Option<(&str, u64)> {
        self.links
            .iter()
            .fold(None, |best: Option<(&str, u64)>, (link, &n)| match best {
                Some((_, b)) if b >= n => best,
                _ => Some((link, n)),
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WikiTable {
    pub names: BTreeMap<String, NameStats>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WikiTableError {
    #[error("line {line}: expected `name<TAB>link<TAB>count<TAB>total`")]
    Malformed { line: usize },
    #[error("line {line}: link counts for `{name}` exceed its total")]
    Inconsistent { line: usize, name: String },
}

impl WikiTable {
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&NameStats> {
        self.names.get(name)
    }

    /// One line per (name, link), sorted; names never linked get one line
    /// with an empty link and count 0.
    pub fn to_file_text(&self) -> String {
        let mut out = String::new();
        for (name, stats) in &self.names {
            if stats.links.is_empty() {
                let _ = writeln!(out, "{name}\t\t0\t{}", stats.total);
            }
            for (link, n) in &stats.links {
                let _ = writeln!(out, "{name}\t{link}\t{n}\t{}", stats.total);
            }
        }
        out
    }

    pub fn from_file_text(text: &str) -> Result<Self, WikiTableError> {
        let mut table = WikiTable::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let line_no = i + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            let [name, link, count, total] = fields[..] else {
                return Err(WikiTableError::Malformed { line: line_no });
            };
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| WikiTableError::Malformed { line: line_no })
            };
            let (count, total) = (parse(count)?, parse(total)?);
            let stats = table.names.entry(name.to_string()).or_default();
            stats.total = total;
            if !link.is_empty() {
                *stats.links.entry(link.to_string()).or_default() += count;
            }
            if stats.links.values().sum::<u64>() > stats.total {
                return Err(WikiTableError::Inconsistent {
                    line: line_no,
                    name: name.to_string(),
                });
            }
        }
        Ok(table)
    }
}

/// The `:opN` constants of the `:name` node of `var`, in N order, joined by
/// spaces.
pub fn name_string(graph: &AmrGraph, var: &str) -> Option<String> {
    let name_var = graph
        .edges_from(var)
        .filter(|e| e.relation == "name")
        .find_map(|e| e.target.as_var())?;
    let mut ops: Vec<(u32, &str)> = graph
        .edges_from(name_var)
        .filter_map(|e| {
            let n = e.relation.strip_prefix("op")?.parse().ok()?;
            Some((n, e.target.as_const()?.value.as_str()))
        })
        .collect();
    ops.sort_by_key(|(n, _)| *n);
    let name = ops.iter().map(|(_, s)| *s).collect::<Vec<_>>().join(" ");
    (!name.is_empty()).then_some(name)
}

fn wiki_of<'a>(graph: &'a AmrGraph, var: &'a str) -> Option<&'a Constant> {
    graph
        .edges_from(var)
        .find(|e| e.relation == WIKI)
        .and_then(|e| e.target.as_const())
}

/// Counts each name occurrence and the `:wiki` links it carries. `:wiki -`
/// counts as an occurrence without a link.
pub fn build_wiki_table(gold: &[Document]) -> WikiTable {
    let mut table = WikiTable::default();
    for doc in gold {
        let g = &doc.graph;
        for var in g.nodes.keys() {
            let Some(name) = name_string(g, var) else {
                continue;
            };
            let stats = table.names.entry(name).or_default();
            stats.total += 1;
            if let Some(link) = wiki_of(g, var).filter(|c| c.value != "-") {
                *stats.links.entry(link.value.clone()).or_default() += 1;
            }
        }
    }
    table
}

pub fn wikify(graph: &AmrGraph, table: &WikiTable) -> AmrGraph {
    wikify_with_threshold(graph, table, WIKI_THRESHOLD)
}

/// Adds `:wiki "link"` to name-bearing nodes that have none, when the most
/// frequent link's share is strictly above `threshold`. The edge goes right
/// before the node's `:name` edge.
pub fn wikify_with_threshold(graph: &AmrGraph, table: &WikiTable, threshold: f64) -> AmrGraph {
    let mut out = graph.clone();
    for var in graph.nodes.keys() {
        if wiki_of(graph, var).is_some() {
            continue;
        }
        let Some(stats) = name_string(graph, var).and_then(|n| table.get(&n)) else {
            continue;
        };
        let Some((link, n)) = stats.best_link() else {
            continue;
        };
        if stats.total == 0 || n as f64 / stats.total as f64 <= threshold {
            continue;
        }
        let at = out
            .edges
            .iter()
            .position(|e| e.source == *var && e.relation == "name")
            .expect("name edge exists");
        out.edges.insert(
            at,
            Edge::new(var.clone(), WIKI, Target::Const(Constant::quoted(link))),
        );
    }
    out
}
