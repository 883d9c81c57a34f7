//! The AMR graph data model.
//!
//! Relation labels are stored without the leading colon; the colon is added
//! on serialization. Edge order is the order of the source text and every
//! traversal in this crate follows it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// An attribute value: quoted string, number, or bare symbol such as `-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constant {
    pub value: String,
    pub quoted: bool,
}

impl Constant {
    pub fn quoted(value: impl Into<String>) -> Self {
        Constant {
            value: value.into(),
            quoted: true,
        }
    }

    pub fn bare(value: impl Into<String>) -> Self {
        Constant {
            value: value.into(),
            quoted: false,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quoted {
            write!(f, "\"{}\"", self.value)
        } else {
            f.write_str(&self.value)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Var(String),
    Const(Constant),
}

impl Target {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            Target::Var(v) => Some(v),
            Target::Const(_) => None,
        }
    }

    pub fn as_const(&self) -> Option<&Constant> {
        match self {
            Target::Const(c) => Some(c),
            Target::Var(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: String,
    pub relation: String,
    pub target: Target,
}

impl Edge {
    pub fn new(source: impl Into<String>, relation: impl Into<String>, target: Target) -> Self {
        Edge {
            source: source.into(),
            relation: relation.into(),
            target,
        }
    }
}

/// Corpus metadata attached to a graph (`# ::key value` lines).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub id: String,
    pub snt: String,
    pub alignments: Option<String>,
    pub tokens: Option<Vec<String>>,
    /// Any other keys, in source order.
    pub extra: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmrGraph {
    pub root: String,
    /// Variable → concept, in definition order.
    pub nodes: IndexMap<String, String>,
    pub edges: Vec<Edge>,
    pub metadata: Metadata,
}

/// A structural invariant violated by a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    MissingRoot(String),
    EmptyConcept(String),
    UndefinedVariableReference(String),
    MalformedRelation(String),
    Unreachable(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingRoot(v) => write!(f, "root `{v}` is not a node"),
            Violation::EmptyConcept(v) => write!(f, "variable `{v}` has an empty concept"),
            Violation::UndefinedVariableReference(v) => {
                write!(f, "edge refers to undefined variable `{v}`")
            }
            Violation::MalformedRelation(r) => write!(f, "malformed relation label `{r}`"),
            Violation::Unreachable(v) => write!(f, "variable `{v}` is not reachable from the root"),
        }
    }
}

impl AmrGraph {
    /// A single-node graph.
    pub fn new(root: impl Into<String>, concept: impl Into<String>) -> Self {
        let root = root.into();
        let mut nodes = IndexMap::new();
        nodes.insert(root.clone(), concept.into());
        AmrGraph {
            root,
            nodes,
            edges: Vec::new(),
            metadata: Metadata::default(),
        }
    }

    pub fn concept(&self, var: &str) -> Option<&str> {
        self.nodes.get(var).map(String::as_str)
    }

    pub fn edges_from<'a>(&'a self, var: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.source == var)
    }

    /// Number of relation edges pointing at each variable.
    pub fn in_degrees(&self) -> HashMap<&str, usize> {
        let mut deg = HashMap::new();
        for e in &self.edges {
            if let Target::Var(t) = &e.target {
                *deg.entry(t.as_str()).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Lists every violated invariant; empty iff the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.nodes.contains_key(&self.root) {
            out.push(Violation::MissingRoot(self.root.clone()));
        }
        for (var, concept) in &self.nodes {
            if concept.trim().is_empty() {
                out.push(Violation::EmptyConcept(var.clone()));
            }
        }
        let mut undefined = HashSet::new();
        for e in &self.edges {
            if e.relation.is_empty()
                || e.relation.starts_with(':')
                || e.relation.chars().any(char::is_whitespace)
            {
                out.push(Violation::MalformedRelation(e.relation.clone()));
            }
            if !self.nodes.contains_key(&e.source) && undefined.insert(e.source.clone()) {
                out.push(Violation::UndefinedVariableReference(e.source.clone()));
            }
            if let Target::Var(t) = &e.target {
                if !self.nodes.contains_key(t) && undefined.insert(t.clone()) {
                    out.push(Violation::UndefinedVariableReference(t.clone()));
                }
            }
        }
        if self.nodes.contains_key(&self.root) {
            let reached = self.undirected_reach();
            for var in self.nodes.keys() {
                if !reached.contains(var.as_str()) {
                    out.push(Violation::Unreachable(var.clone()));
                }
            }
        }
        out
    }

    fn undirected_reach(&self) -> HashSet<&str> {
        let mut adj: HashMap<&str, Vec<&str>> = HashMap::new();
        for e in &self.edges {
            if let Target::Var(t) = &e.target {
                adj.entry(e.source.as_str()).or_default().push(t);
                adj.entry(t.as_str()).or_default().push(&e.source);
            }
        }
        let mut seen = HashSet::from([self.root.as_str()]);
        let mut stack = vec![self.root.as_str()];
        while let Some(v) = stack.pop() {
            for &n in adj.get(v).into_iter().flatten() {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen
    }

    /// Depth-first traversal from the root following stored edge order.
    ///
    /// Each variable is expanded at its first occurrence; later occurrences
    /// are references. Edges whose source cannot be reached from the root
    /// along edge direction are walked backwards from their target with an
    /// inverted (`-of`) label, so every node of a valid graph is covered.
    pub fn walk(&self) -> WalkNode {
        let forward = self.forward_reach();
        let mut visited = HashSet::new();
        let mut emitted = vec![false; self.edges.len()];
        self.walk_from(&self.root, &forward, &mut visited, &mut emitted)
    }

    fn forward_reach(&self) -> HashSet<&str> {
        let mut seen = HashSet::from([self.root.as_str()]);
        let mut stack = vec![self.root.as_str()];
        while let Some(v) = stack.pop() {
            for e in self.edges_from(v) {
                if let Target::Var(t) = &e.target {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        seen
    }

    fn walk_from(
        &self,
        var: &str,
        forward: &HashSet<&str>,
        visited: &mut HashSet<String>,
        emitted: &mut [bool],
    ) -> WalkNode {
        visited.insert(var.to_string());
        let mut children = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            if emitted[i] {
                continue;
            }
            let (relation, target) = if edge.source == var {
                (edge.relation.clone(), edge.target.clone())
            } else if edge.target.as_var() == Some(var)
                && !visited.contains(&edge.source)
                && !forward.contains(edge.source.as_str())
            {
                (
                    invert_relation(&edge.relation),
                    Target::Var(edge.source.clone()),
                )
            } else {
                continue;
            };
            emitted[i] = true;
            let child = match target {
                Target::Const(c) => WalkChild::Const(c),
                Target::Var(t) if visited.contains(&t) => WalkChild::Ref(t),
                Target::Var(t) => WalkChild::Node(self.walk_from(&t, forward, visited, emitted)),
            };
            children.push(WalkEdge {
                edge: i,
                relation,
                child,
            });
        }
        WalkNode {
            var: var.to_string(),
            concept: self.nodes.get(var).cloned().unwrap_or_default(),
            children,
        }
    }
}

/// `ARG0` ↔ `ARG0-of`.
pub fn invert_relation(relation: &str) -> String {
    match relation.strip_suffix("-of") {
        Some(base) if !is_lexical_of(relation) => base.to_string(),
        _ => format!("{relation}-of"),
    }
}

/// Relations that end in `-of` without being inverses.
pub fn is_lexical_of(relation: &str) -> bool {
    matches!(relation, "consist-of" | "prep-out-of" | "prep-on-behalf-of")
}

/// One expanded node of [`AmrGraph::walk`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkNode {
    pub var: String,
    pub concept: String,
    pub children: Vec<WalkEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkEdge {
    /// Index into [`AmrGraph::edges`].
    pub edge: usize,
    /// Label as emitted, possibly inverted.
    pub relation: String,
    pub child: WalkChild,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkChild {
    Node(WalkNode),
    Ref(String),
    Const(Constant),
}

/// Hands out variable names: first letter of the concept, then `2`, `3`, …
/// on collision.
#[derive(Clone, Debug, Default)]
pub struct VarNamer {
    used: HashSet<String>,
}

impl VarNamer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self, concept: &str) -> String {
        let letter = concept
            .chars()
            .find(|c| c.is_alphabetic())
            .map(|c| c.to_lowercase().next().unwrap_or('x'))
            .filter(char::is_ascii_lowercase)
            .unwrap_or('x');
        let mut name = letter.to_string();
        let mut n = 2;
        while self.used.contains(&name) {
            name = format!("{letter}{n}");
            n += 1;
        }
        self.used.insert(name.clone());
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node() -> AmrGraph {
        let mut g = AmrGraph::new("a", "want-01");
        g.nodes.insert("b".into(), "boy".into());
        g.edges
            .push(Edge::new("a", "ARG0", Target::Var("b".into())));
        g
    }

    #[test]
    fn valid_graph_has_no_violations() {
        assert!(two_node().validate().is_empty());
    }

    #[test]
    fn undefined_target_is_reported() {
        let mut g = two_node();
        g.edges
            .push(Edge::new("a", "ARG1", Target::Var("z".into())));
        assert_eq!(
            g.validate(),
            vec![Violation::UndefinedVariableReference("z".into())]
        );
    }

    #[test]
    fn disconnected_node_is_unreachable() {
        let mut g = two_node();
        g.nodes.insert("d".into(), "dog".into());
        assert_eq!(g.validate(), vec![Violation::Unreachable("d".into())]);
    }

    #[test]
    fn missing_root_and_empty_concept() {
        let mut g = two_node();
        g.root = "q".into();
        g.nodes.insert("e".into(), String::new());
        g.edges
            .push(Edge::new("a", "ARG2", Target::Var("e".into())));
        let v = g.validate();
        assert!(v.contains(&Violation::MissingRoot("q".into())));
        assert!(v.contains(&Violation::EmptyConcept("e".into())));
    }

    #[test]
    fn backward_only_node_is_reached_through_inverse() {
        let mut g = AmrGraph::new("a", "cell");
        g.nodes.insert("b".into(), "bind-01".into());
        g.edges
            .push(Edge::new("b", "ARG1", Target::Var("a".into())));
        let w = g.walk();
        assert_eq!(w.children.len(), 1);
        assert_eq!(w.children[0].relation, "ARG1-of");
    }

    #[test]
    fn inversion_round_trips() {
        assert_eq!(invert_relation("ARG0"), "ARG0-of");
        assert_eq!(invert_relation("ARG0-of"), "ARG0");
        assert_eq!(invert_relation("consist-of"), "consist-of-of");
    }

    #[test]
    fn namer_suffixes_collisions() {
        let mut n = VarNamer::new();
        assert_eq!(n.fresh("cell"), "c");
        assert_eq!(n.fresh("cat"), "c2");
        assert_eq!(n.fresh("cow"), "c3");
        assert_eq!(n.fresh("\"quoted\""), "q");
        assert_eq!(n.fresh("-"), "x");
    }
}
