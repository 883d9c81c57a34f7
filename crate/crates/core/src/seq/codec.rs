//! Variable removal and restoration.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;

use crate::error::ParseError;
use crate::graph::{AmrGraph, Constant, Edge, Metadata, Target, VarNamer, WalkChild, WalkNode};
use crate::seq::tree::{is_constant_token, text_to_tree, SeqKind, SeqTree};

/// Relation of Wikipedia links, which the seq2seq form leaves out.
pub const WIKI: &str = "wiki";

/// Drops variables: every node is expanded at its first visit in the
/// edge-ordered depth-first walk, later visits become bare reference leaves
/// carrying only the concept. `:wiki` attributes are removed.
pub fn anonymize(graph: &AmrGraph) -> SeqTree {
    anonymize_traced(graph).0
}

/// Like [`anonymize`], also returning the graph edge behind each tree path.
pub(crate) fn anonymize_traced(graph: &AmrGraph) -> (SeqTree, BTreeMap<Vec<usize>, usize>) {
    let mut trace = BTreeMap::new();
    let tree = convert(graph, &graph.walk(), &mut Vec::new(), &mut trace);
    (tree, trace)
}

fn convert(
    graph: &AmrGraph,
    node: &WalkNode,
    path: &mut Vec<usize>,
    trace: &mut BTreeMap<Vec<usize>, usize>,
) -> SeqTree {
    let mut tree = SeqTree::concept(node.concept.clone());
    for walk_edge in node.children.iter().filter(|c| c.relation != WIKI) {
        path.push(tree.children.len());
        trace.insert(path.clone(), walk_edge.edge);
        let child = match &walk_edge.child {
            WalkChild::Node(n) => convert(graph, n, path, trace),
            WalkChild::Ref(v) => SeqTree::reference(graph.concept(v).unwrap_or_default()),
            WalkChild::Const(c) => SeqTree::constant(constant_label(c)),
        };
        path.pop();
        tree.children.push((walk_edge.relation.clone(), child));
    }
    tree
}

/// Printed form of a constant that reads back as a constant: symbols that
/// would be mistaken for references are quoted.
fn constant_label(c: &Constant) -> String {
    if !c.quoted && is_constant_token(&c.value) {
        c.value.clone()
    } else {
        format!("\"{}\"", c.value)
    }
}

fn label_constant(label: &str) -> Constant {
    match label.strip_prefix('"').and_then(|l| l.strip_suffix('"')) {
        Some(inner) => Constant::quoted(inner),
        None => Constant::bare(label),
    }
}

/// Restores variables in tree text.
pub fn restore(text: &str) -> Result<AmrGraph, ParseError> {
    text_to_tree(text).map(|t| restore_tree(&t))
}

/// Assigns fresh variables to every parenthesized node, then resolves each
/// bare reference to the first node (in pre-order) with the same concept. A
/// reference without such a node becomes a new node of its own.
pub fn restore_tree(tree: &SeqTree) -> AmrGraph {
    let mut namer = VarNamer::new();
    let mut nodes = IndexMap::new();
    let mut by_concept: HashMap<String, String> = HashMap::new();
    let mut vars = HashMap::new();
    tree.for_each_preorder(&mut |path, node| {
        if node.kind == SeqKind::Concept || path.is_empty() {
            let var = namer.fresh(&node.label);
            nodes.insert(var.clone(), node.label.clone());
            by_concept
                .entry(node.label.clone())
                .or_insert_with(|| var.clone());
            vars.insert(path.to_vec(), var);
        }
    });

    let mut edges = Vec::new();
    tree.for_each_preorder(&mut |path, node| {
        let Some(source) = vars.get(path).cloned() else {
            return;
        };
        for (i, (relation, child)) in node.children.iter().enumerate() {
            let target = match child.kind {
                SeqKind::Concept => {
                    let mut child_path = path.to_vec();
                    child_path.push(i);
                    Target::Var(vars[&child_path].clone())
                }
                SeqKind::Constant => Target::Const(label_constant(&child.label)),
                SeqKind::Reference => {
                    let var = by_concept.entry(child.label.clone()).or_insert_with(|| {
                        let var = namer.fresh(&child.label);
                        nodes.insert(var.clone(), child.label.clone());
                        var
                    });
                    Target::Var(var.clone())
                }
            };
            edges.push(Edge::new(source.clone(), relation.clone(), target));
        }
    });

    AmrGraph {
        root: vars[&Vec::new()].clone(),
        nodes,
        edges,
        metadata: Metadata::default(),
    }
}

/// Whether [`restore`] can recover `graph` exactly from its tree: every
/// node that shows up as a reference leaf has a concept no other node
/// shares, and the graph has no `:wiki` attributes.
pub fn restorable(graph: &AmrGraph) -> bool {
    fn refs<'a>(node: &'a WalkNode, out: &mut Vec<&'a str>) {
        for c in &node.children {
            match &c.child {
                WalkChild::Node(n) => refs(n, out),
                WalkChild::Ref(v) => out.push(v),
                WalkChild::Const(_) => {}
            }
        }
    }
    if graph.edges.iter().any(|e| e.relation == WIKI) {
        return false;
    }
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for concept in graph.nodes.values() {
        *counts.entry(concept.as_str()).or_default() += 1;
    }
    let walk = graph.walk();
    let mut referenced = Vec::new();
    refs(&walk, &mut referenced);
    referenced
        .iter()
        .all(|v| graph.concept(v).is_some_and(|c| counts[c] == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{CRK_CAS_PENMAN, CRK_CAS_TREE};
    use crate::penman::parse_penman;
    use crate::seq::tree::tree_to_text;
    use crate::triples::to_triples;

    #[test]
    fn example_matches_printed_tree() {
        let g = parse_penman(CRK_CAS_PENMAN).unwrap();
        let t = anonymize(&g);
        assert_eq!(t, text_to_tree(CRK_CAS_TREE).unwrap());
        assert!(tree_to_text(&t, false).contains(":ARG0 cell)"));
    }

    #[test]
    fn single_node() {
        let g = parse_penman("(c / cell)").unwrap();
        assert_eq!(anonymize(&g), SeqTree::concept("cell"));
        assert_eq!(restore("(cell)").unwrap(), g);
    }

    #[test]
    fn wiki_is_removed() {
        let g = parse_penman("(p / person :wiki \"Q123\" :name (n / name :op1 \"Ann\"))").unwrap();
        let t = anonymize(&g);
        assert_eq!(
            tree_to_text(&t, false),
            "(person :name (name :op1 \"Ann\"))"
        );
        assert!(!restore(&tree_to_text(&t, false))
            .unwrap()
            .edges
            .iter()
            .any(|e| e.relation == WIKI));
    }

    #[test]
    fn example_restores_reentrancy() {
        let g = parse_penman(CRK_CAS_PENMAN).unwrap();
        let r = restore(CRK_CAS_TREE).unwrap();
        assert_eq!(to_triples(&r), to_triples(&g));
        assert!(r.validate().is_empty());
    }

    #[test]
    fn distinct_nodes_with_children_stay_distinct() {
        let r = restore("(and :op1 (cell :mod (big)) :op2 (cell :mod (small)))").unwrap();
        assert_eq!(r.nodes.len(), 5);
        assert_eq!(r.in_degrees().values().max(), Some(&1));
    }

    #[test]
    fn parenthesized_leaves_are_never_merged() {
        let r = restore("(and :op1 (cell) :op2 (cell))").unwrap();
        assert_eq!(r.nodes.len(), 3);
    }

    #[test]
    fn reference_before_definition_resolves_forward() {
        let r = restore("(induce-01 :ARG2 (migrate-01 :ARG0 cell) :ARG1 (cell))").unwrap();
        assert_eq!(r.nodes.len(), 3);
        let g = parse_penman("(i / induce-01 :ARG1 (c / cell) :ARG2 (m / migrate-01 :ARG0 c))")
            .unwrap();
        assert_eq!(to_triples(&r), to_triples(&g));
    }

    #[test]
    fn unresolved_reference_becomes_node() {
        let r = restore("(want-01 :ARG0 boy :ARG1 boy)").unwrap();
        assert_eq!(r.nodes.len(), 2);
        assert_eq!(r.edges[0].target, r.edges[1].target);
    }

    #[test]
    fn symbol_constants_survive() {
        let g = parse_penman("(g / go-02 :mode imperative :mod foo :quant 3 :polarity -)").unwrap();
        let t = anonymize(&g);
        assert_eq!(
            tree_to_text(&t, false),
            "(go-02 :mode imperative :mod \"foo\" :quant 3 :polarity -)"
        );
        assert_eq!(to_triples(&restore_tree(&t)), to_triples(&g));
    }

    #[test]
    fn restorable_condition() {
        assert!(restorable(&parse_penman(CRK_CAS_PENMAN).unwrap()));
        let g = parse_penman(
            "(a / and :op1 (c / cell) :op2 (c2 / cell :ARG0-of (m / move-01 :ARG1 c2)))",
        )
        .unwrap();
        assert!(!restorable(&g));
    }
}
