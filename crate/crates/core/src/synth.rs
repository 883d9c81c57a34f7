//! Random graphs, trees, corpora and text damage for tests and benchmarks.
//!
//! Concept and relation pools are small on purpose so that random pairs share
//! structure and matching is non-trivial.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus::Document;
use crate::graph::{AmrGraph, Constant, Edge, Target, VarNamer};
use crate::seq::tree::SeqTree;

pub const CONCEPTS: &[&str] = &[
    "bind-01",
    "cell",
    "protein",
    "require-01",
    "induce-01",
    "migrate-01",
    "kinase",
    "activate-01",
    "gene",
    "name",
];

pub const RELATIONS: &[&str] = &[
    "ARG0",
    "ARG1",
    "ARG2",
    "mod",
    "location",
    "ARG0-of",
    "consist-of",
    "part",
];

#[derive(Clone, Copy, Debug)]
pub struct GraphShape {
    pub max_nodes: usize,
    /// Chance of one extra re-entrant edge per node.
    pub reentrancy: f64,
    /// Chance of one attribute per node.
    pub attribute: f64,
}

impl GraphShape {
    pub fn small(max_nodes: usize) -> Self {
        GraphShape {
            max_nodes,
            reentrancy: 0.2,
            attribute: 0.3,
        }
    }
}

fn random_constant<R: Rng>(rng: &mut R) -> (&'static str, Constant) {
    match rng.gen_range(0..4) {
        0 => ("polarity", Constant::bare("-")),
        1 => ("quant", Constant::bare(rng.gen_range(1..20).to_string())),
        2 => (
            "op1",
            Constant::quoted(*["Crk", "CAS", "ERK", "DNA"].choose(rng).unwrap()),
        ),
        _ => ("mode", Constant::bare("imperative")),
    }
}

/// A connected graph: a random spanning tree from the root, then extra
/// relation edges between random nodes and random attributes.
pub fn random_graph<R: Rng>(rng: &mut R, shape: GraphShape) -> AmrGraph {
    let n = rng.gen_range(1..=shape.max_nodes.max(1));
    let mut namer = VarNamer::new();
    let concepts: Vec<&str> = (0..n).map(|_| *CONCEPTS.choose(rng).unwrap()).collect();
    let names: Vec<String> = concepts.iter().map(|c| namer.fresh(c)).collect();
    let mut graph = AmrGraph::new(names[0].clone(), concepts[0]);
    for (name, concept) in names.iter().zip(&concepts).skip(1) {
        graph.nodes.insert(name.clone(), concept.to_string());
    }

    // Tree edges are interleaved with the rest so edge order varies.
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let relation = *RELATIONS.choose(rng).unwrap();
        edges.push(Edge::new(
            names[parent].clone(),
            relation,
            Target::Var(names[i].clone()),
        ));
    }
    for name in &names {
        if rng.gen_bool(shape.reentrancy) && n > 1 {
            let target = names.choose(rng).unwrap();
            let relation = *RELATIONS.choose(rng).unwrap();
            let at = rng.gen_range(0..=edges.len());
            edges.insert(
                at,
                Edge::new(name.clone(), relation, Target::Var(target.clone())),
            );
        }
        if rng.gen_bool(shape.attribute) {
            let (relation, value) = random_constant(rng);
            let at = rng.gen_range(0..=edges.len());
            edges.insert(at, Edge::new(name.clone(), relation, Target::Const(value)));
        }
    }
    edges.dedup();
    graph.edges = edges;
    graph
}

/// A random variable-free tree. Sibling duplicates are common so pruning has
/// something to do.
pub fn random_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> SeqTree {
    let mut budget = rng.gen_range(1..=max_nodes.max(1));
    grow(rng, &mut budget, 0)
}

fn grow<R: Rng>(rng: &mut R, budget: &mut usize, depth: usize) -> SeqTree {
    *budget = budget.saturating_sub(1);
    let mut node = SeqTree::concept(CONCEPTS[rng.gen_range(0..4)]);
    while *budget > 0 && rng.gen_bool(if depth < 3 { 0.6 } else { 0.3 }) {
        let relation = RELATIONS[rng.gen_range(0..3)];
        let child = match rng.gen_range(0..6) {
            0 => {
                *budget -= 1;
                SeqTree::reference(CONCEPTS[rng.gen_range(0..4)])
            }
            1 => {
                *budget -= 1;
                SeqTree::constant("-")
            }
            _ => grow(rng, budget, depth + 1),
        };
        node.children.push((relation.to_string(), child));
    }
    node
}

/// Documents with random graphs and sentences built from their concepts.
pub fn random_corpus<R: Rng>(rng: &mut R, docs: usize, shape: GraphShape) -> Vec<Document> {
    (0..docs)
        .map(|i| {
            let graph = random_graph(rng, shape);
            let mut words: Vec<String> = graph
                .nodes
                .values()
                .map(|c| c.split('-').next().unwrap_or(c).to_string())
                .collect();
            words.shuffle(rng);
            Document::new(format!("doc{}", i + 1), words.join(" "), graph)
        })
        .collect()
}

/// Damages text the way a decoder might: truncation, dropped characters,
/// stray parentheses, colons and quotes.
pub fn corrupt<R: Rng>(rng: &mut R, text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..4) {
            0 if !chars.is_empty() => {
                let at = rng.gen_range(0..chars.len());
                chars.truncate(at);
            }
            1 if !chars.is_empty() => {
                let at = rng.gen_range(0..chars.len());
                chars.remove(at);
            }
            _ => {
                let at = rng.gen_range(0..=chars.len());
                let c = *['(', ')', ':', '"', ' ', '/'].choose(rng).unwrap();
                chars.insert(at, c);
            }
        }
    }
    chars.into_iter().collect()
}
