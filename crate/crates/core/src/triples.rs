//! Smatch-style triple decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{is_lexical_of, AmrGraph, Target};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Triple {
    /// `(TOP, root, root concept)`: matches only when the mapped roots carry
    /// the same concept.
    Top {
        var: String,
        concept: String,
    },
    Instance {
        var: String,
        concept: String,
    },
    Attribute {
        var: String,
        relation: String,
        value: String,
    },
    Relation {
        source: String,
        relation: String,
        target: String,
    },
}

impl Triple {
    pub fn relation(&self) -> &str {
        match self {
            Triple::Top { .. } => "TOP",
            Triple::Instance { .. } => "instance",
            Triple::Attribute { relation, .. } | Triple::Relation { relation, .. } => relation,
        }
    }

    /// Variables mentioned by the triple.
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        let (a, b) = match self {
            Triple::Top { var, .. }
            | Triple::Instance { var, .. }
            | Triple::Attribute { var, .. } => (var.as_str(), None),
            Triple::Relation { source, target, .. } => (source.as_str(), Some(target.as_str())),
        };
        std::iter::once(a).chain(b)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triple::Top { var, concept } => write!(f, "TOP({var}, {concept})"),
            Triple::Instance { var, concept } => write!(f, "instance({var}, {concept})"),
            Triple::Attribute {
                var,
                relation,
                value,
            } => write!(f, "{relation}({var}, \"{value}\")"),
            Triple::Relation {
                source,
                relation,
                target,
            } => write!(f, "{relation}({source}, {target})"),
        }
    }
}

/// The triples of one graph, kept sorted so that equal multisets compare
/// equal regardless of edge order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSet {
    triples: Vec<Triple>,
}

impl TripleSet {
    pub fn new(mut triples: Vec<Triple>) -> Self {
        triples.sort();
        TripleSet { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn filter(&self, keep: impl Fn(&Triple) -> bool) -> TripleSet {
        TripleSet {
            triples: self.triples.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Triple) -> Triple) -> TripleSet {
        TripleSet::new(self.triples.iter().map(f).collect())
    }

    pub fn instances(&self) -> impl Iterator<Item = &Triple> {
        self.iter().filter(|t| matches!(t, Triple::Instance { .. }))
    }
}

impl<'a> IntoIterator for &'a TripleSet {
    type Item = &'a Triple;
    type IntoIter = std::slice::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Decomposes a graph into instance, attribute, relation and top triples.
///
/// Inverse relations (`ARG0-of`) between variables are normalized to their
/// forward form with source and target swapped; attribute values are
/// compared without their quotes.
pub fn to_triples(graph: &AmrGraph) -> TripleSet {
    let mut triples = Vec::with_capacity(graph.nodes.len() + graph.edges.len() + 1);
    triples.push(Triple::Top {
        var: graph.root.clone(),
        concept: graph.concept(&graph.root).unwrap_or_default().to_string(),
    });
    for (var, concept) in &graph.nodes {
        triples.push(Triple::Instance {
            var: var.clone(),
            concept: concept.clone(),
        });
    }
    for e in &graph.edges {
        triples.push(match &e.target {
            Target::Const(c) => Triple::Attribute {
                var: e.source.clone(),
                relation: e.relation.clone(),
                value: c.value.clone(),
            },
            Target::Var(t) => match e.relation.strip_suffix("-of") {
                Some(base) if !is_lexical_of(&e.relation) => Triple::Relation {
                    source: t.clone(),
                    relation: base.to_string(),
                    target: e.source.clone(),
                },
                _ => Triple::Relation {
                    source: e.source.clone(),
                    relation: e.relation.clone(),
                    target: t.clone(),
                },
            },
        });
    }
    TripleSet::new(triples)
}
