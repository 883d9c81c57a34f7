//! Word-order data augmentation: reorder sibling branches to follow the
//! sentence and add the reordered copy of each training graph.

mod alignment;
mod ordering;

pub use alignment::{
    alignment_lines, format_path, parse_alignments, Alignment, AlignmentError, Path, Span,
};
pub use ordering::{
    apply_order, best_order, best_ordering, best_ordering_with_alignment,
    enumerate_aligned_orderings, enumerate_orderings, enumerate_orders, order_score, relocate,
    BranchOrder, OrderScore,
};

use rayon::prelude::*;

use crate::corpus::Document;
use crate::graph::AmrGraph;
use crate::seq::codec::anonymize_traced;

/// Suffix of the ids of added documents.
pub const AUGMENTED_SUFFIX: &str = ".aug";

/// Permutes the graph's edges so that its tree shows `order`. Each node's
/// edges trade places among the positions they already occupy.
pub fn reorder_graph(graph: &AmrGraph, order: &BranchOrder) -> AmrGraph {
    let (tree, trace) = anonymize_traced(graph);
    let mut out = graph.clone();
    for (path, perm) in order {
        let Some(node) = tree.get(path) else {
            continue;
        };
        let edges: Vec<usize> = (0..node.children.len())
            .map(|i| {
                let mut child = path.clone();
                child.push(i);
                trace[&child]
            })
            .collect();
        let mut slots = edges.clone();
        slots.sort_unstable();
        for (slot, &i) in slots.iter().zip(perm) {
            out.edges[*slot] = graph.edges[edges[i]].clone();
        }
    }
    out
}

/// The documents followed by one reordered copy of each, with id suffix
/// `.aug`. Copies are added even when the order does not change.
pub fn augment_corpus(docs: &[(Document, Alignment)]) -> Vec<Document> {
    let copies: Vec<Document> = docs
        .par_iter()
        .map(|(doc, alignment)| {
            let tree = crate::seq::codec::anonymize(&doc.graph);
            let graph = reorder_graph(&doc.graph, &best_order(&tree, alignment));
            let mut copy = Document::new(
                format!("{}{AUGMENTED_SUFFIX}", doc.id),
                doc.sentence.clone(),
                graph,
            );
            copy.gold = doc.gold;
            copy
        })
        .collect();
    docs.iter().map(|(d, _)| d.clone()).chain(copies).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        CRK_CAS_ALIGNMENT, CRK_CAS_PENMAN, CRK_CAS_SENTENCE, CRK_CAS_TREE, CRK_CAS_WORD_ORDER_TREE,
    };
    use crate::penman::parse_penman;
    use crate::seq::codec::anonymize;
    use crate::seq::tree::text_to_tree;
    use crate::smatch::smatch_exact;

    #[test]
    fn example_doc_is_doubled() {
        let graph = parse_penman(CRK_CAS_PENMAN).unwrap();
        let tree = text_to_tree(CRK_CAS_TREE).unwrap();
        let a = parse_alignments(CRK_CAS_ALIGNMENT, &tree).unwrap();
        let doc = Document::new("d1", CRK_CAS_SENTENCE, graph.clone());
        let out = augment_corpus(&[(doc.clone(), a)]);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], doc);
        assert_eq!(out[1].id, "d1.aug");
        assert_eq!(anonymize(&out[0].graph), tree);
        assert_eq!(
            anonymize(&out[1].graph),
            text_to_tree(CRK_CAS_WORD_ORDER_TREE).unwrap()
        );
        assert_eq!(smatch_exact(&graph, &out[1].graph, 10).unwrap().f, 1.0);
        assert!(augment_corpus(&[]).is_empty());
    }

    #[test]
    fn every_ordering_reorders_the_graph() {
        let graph = parse_penman(CRK_CAS_PENMAN).unwrap();
        let tree = anonymize(&graph);
        for (t, order) in enumerate_orders(&tree, 100) {
            let g = reorder_graph(&graph, &order);
            assert_eq!(smatch_exact(&graph, &g, 10).unwrap().f, 1.0);
            // The re-entrant node stays expanded before its reference here.
            assert_eq!(anonymize(&g).node_count(), t.node_count());
        }
    }
}
