use std::collections::HashSet;

use crate::seq::tree::SeqTree;

/// Drops repeated (relation, child label) pairs among each node's children,
/// keeping the first, at every depth.
pub fn prune(tree: &SeqTree) -> SeqTree {
    let mut seen = HashSet::new();
    let children = tree
        .children
        .iter()
        .filter(|(rel, child)| seen.insert((rel.as_str(), child.label.as_str())))
        .map(|(rel, child)| (rel.clone(), prune(child)))
        .collect();
    SeqTree {
        label: tree.label.clone(),
        kind: tree.kind,
        children,
    }
}
