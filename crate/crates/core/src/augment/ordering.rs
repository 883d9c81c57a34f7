//! Sibling orderings of a tree and their agreement with sentence word order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use super::alignment::{Alignment, Path};
use crate::seq::tree::SeqTree;

/// New child order per node, keyed by the node's path in the original tree.
/// Nodes without an entry keep their order.
pub type BranchOrder = BTreeMap<Path, Vec<usize>>;

/// Subset search is exact up to this many aligned siblings; wider nodes
/// fall back to sorting by earliest aligned token.
const MAX_EXACT_SIBLINGS: usize = 12;

/// Agreement of the pre-order sequence of aligned start tokens with sorted
/// order: `1 - inversions / pairs`. Kept as counts so comparisons are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderScore {
    pub inversions: u64,
    pub pairs: u64,
}

impl OrderScore {
    pub fn value(&self) -> f64 {
        if self.pairs == 0 {
            1.0
        } else {
            1.0 - self.inversions as f64 / self.pairs as f64
        }
    }

    fn fraction(&self) -> (u128, u128) {
        if self.pairs == 0 {
            (1, 1)
        } else {
            ((self.pairs - self.inversions) as u128, self.pairs as u128)
        }
    }
}

impl PartialOrd for OrderScore {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderScore {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.fraction();
        let (c, d) = other.fraction();
        (a * d).cmp(&(c * b))
    }
}

pub fn apply_order(tree: &SeqTree, order: &BranchOrder) -> SeqTree {
    fn go(node: &SeqTree, path: &mut Path, order: &BranchOrder) -> SeqTree {
        let identity: Vec<usize> = (0..node.children.len()).collect();
        let perm = order.get(path.as_slice()).unwrap_or(&identity);
        let children = perm
            .iter()
            .map(|&i| {
                let (rel, child) = &node.children[i];
                path.push(i);
                let child = go(child, path, order);
                path.pop();
                (rel.clone(), child)
            })
            .collect();
        SeqTree {
            label: node.label.clone(),
            kind: node.kind,
            children,
        }
    }
    go(tree, &mut Vec::new(), order)
}

/// Where the node at original `path` ends up after `order`.
pub fn relocate(order: &BranchOrder, path: &[usize]) -> Path {
    (0..path.len())
        .map(|depth| {
            let child = path[depth];
            order
                .get(&path[..depth])
                .and_then(|perm| perm.iter().position(|&c| c == child))
                .unwrap_or(child)
        })
        .collect()
}

fn aligned_starts(tree: &SeqTree, alignment: &Alignment) -> Vec<usize> {
    let mut starts = Vec::new();
    tree.for_each_preorder(&mut |path, _| {
        if let Some(span) = alignment.get(path) {
            starts.push(span.start);
        }
    });
    starts
}

pub fn order_score(tree: &SeqTree, alignment: &Alignment) -> OrderScore {
    let starts = aligned_starts(tree, alignment);
    let n = starts.len() as u64;
    let mut inversions = 0;
    for (i, a) in starts.iter().enumerate() {
        inversions += starts[i + 1..].iter().filter(|b| a > b).count() as u64;
    }
    OrderScore {
        inversions,
        pairs: n * n.saturating_sub(1) / 2,
    }
}

/// Pairs (a, b) with a from `xs`, b from `ys` and a > b; both sorted.
fn cross(xs: &[usize], ys: &[usize]) -> u64 {
    let mut j = 0;
    let mut total = 0;
    for &x in xs {
        while j < ys.len() && ys[j] < x {
            j += 1;
        }
        total += j as u64;
    }
    total
}

/// Child order minimizing inversions between sibling subtrees. Among
/// optimal orders the one that is lexicographically smallest by
/// (earliest start, current index) wins, so plain sorting by earliest start
/// is used whenever it is optimal, and a second pass changes nothing.
fn best_child_order(starts: &[Vec<usize>]) -> Vec<usize> {
    let mut aligned: Vec<usize> = (0..starts.len())
        .filter(|&i| !starts[i].is_empty())
        .collect();
    aligned.sort_by_key(|&i| (starts[i][0], i));
    let unaligned = (0..starts.len()).filter(|&i| starts[i].is_empty());
    if aligned.len() <= 1 || aligned.len() > MAX_EXACT_SIBLINGS {
        return aligned.into_iter().chain(unaligned).collect();
    }

    let k = aligned.len();
    let c: Vec<Vec<u64>> = aligned
        .iter()
        .map(|&x| {
            aligned
                .iter()
                .map(|&y| cross(&starts[x], &starts[y]))
                .collect()
        })
        .collect();
    let first_cost = |x: usize, rest: usize| -> u64 {
        (0..k)
            .filter(|y| rest & (1 << y) != 0)
            .map(|y| c[x][y])
            .sum()
    };
    // best[mask]: fewest inversions for placing the children in `mask` in
    // some order.
    let full = (1usize << k) - 1;
    let mut best = vec![u64::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        for x in (0..k).filter(|x| mask & (1 << x) != 0) {
            let rest = mask & !(1 << x);
            best[mask] = best[mask].min(first_cost(x, rest) + best[rest]);
        }
    }
    let mut order = Vec::with_capacity(starts.len());
    let mut mask = full;
    while mask != 0 {
        let x = (0..k)
            .filter(|x| mask & (1 << x) != 0)
            .find(|&x| {
                let rest = mask & !(1 << x);
                first_cost(x, rest) + best[rest] == best[mask]
            })
            .expect("some child attains the optimum");
        order.push(aligned[x]);
        mask &= !(1 << x);
    }
    order.extend(unaligned);
    order
}

/// Per-node child orders that maximize [`order_score`].
pub fn best_order(tree: &SeqTree, alignment: &Alignment) -> BranchOrder {
    /// Returns the sorted aligned starts of the subtree.
    fn go(
        node: &SeqTree,
        path: &mut Path,
        alignment: &Alignment,
        order: &mut BranchOrder,
    ) -> Vec<usize> {
        let mut per_child = Vec::with_capacity(node.children.len());
        for (i, (_, child)) in node.children.iter().enumerate() {
            path.push(i);
            per_child.push(go(child, path, alignment, order));
            path.pop();
        }
        if node.children.len() >= 2 {
            let perm = best_child_order(&per_child);
            if perm.iter().enumerate().any(|(i, &p)| i != p) {
                order.insert(path.clone(), perm);
            }
        }
        let mut all: Vec<usize> = per_child.into_iter().flatten().collect();
        all.extend(alignment.get(path).map(|s| s.start));
        all.sort_unstable();
        all
    }
    let mut order = BranchOrder::new();
    go(tree, &mut Vec::new(), alignment, &mut order);
    order
}

pub fn best_ordering(tree: &SeqTree, alignment: &Alignment) -> SeqTree {
    apply_order(tree, &best_order(tree, alignment))
}

/// The best ordering together with the alignment moved onto it.
pub fn best_ordering_with_alignment(tree: &SeqTree, alignment: &Alignment) -> (SeqTree, Alignment) {
    let order = best_order(tree, alignment);
    (
        apply_order(tree, &order),
        alignment.remap(|p| relocate(&order, p)),
    )
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len())
        .rev()
        .find(|&j| perm[j] > perm[i - 1])
        .unwrap();
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Distinct sibling orders, at most `cap`, identity first. Nodes are the
/// digits of an odometer in pre-order (the first is most significant) and
/// each digit runs through its permutations lexicographically.
pub fn enumerate_orders(tree: &SeqTree, cap: usize) -> Vec<(SeqTree, BranchOrder)> {
    let mut nodes: Vec<Path> = Vec::new();
    tree.for_each_preorder(&mut |path, node| {
        if node.children.len() >= 2 {
            nodes.push(path.to_vec());
        }
    });
    let mut perms: Vec<Vec<usize>> = nodes
        .iter()
        .map(|p| (0..tree.get(p).unwrap().children.len()).collect())
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let order: BranchOrder = nodes.iter().cloned().zip(perms.iter().cloned()).collect();
        let candidate = apply_order(tree, &order);
        if seen.insert(candidate.clone()) {
            out.push((candidate, order));
            if out.len() >= cap {
                break;
            }
        }
        let mut digit = perms.len();
        loop {
            if digit == 0 {
                return out;
            }
            digit -= 1;
            if next_permutation(&mut perms[digit]) {
                break;
            }
            perms[digit].sort_unstable();
        }
    }
    out
}

pub fn enumerate_orderings(tree: &SeqTree, cap: usize) -> Vec<SeqTree> {
    enumerate_orders(tree, cap)
        .into_iter()
        .map(|(t, _)| t)
        .collect()
}

pub fn enumerate_aligned_orderings(
    tree: &SeqTree,
    alignment: &Alignment,
    cap: usize,
) -> Vec<(SeqTree, Alignment)> {
    enumerate_orders(tree, cap)
        .into_iter()
        .map(|(t, order)| (t, alignment.remap(|p| relocate(&order, p))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::alignment::{parse_alignments, Span};
    use crate::fixtures::{CRK_CAS_ALIGNMENT, CRK_CAS_TREE, CRK_CAS_WORD_ORDER_TREE};
    use crate::seq::tree::text_to_tree;

    fn tree() -> SeqTree {
        text_to_tree(CRK_CAS_TREE).unwrap()
    }

    fn flat(starts: &[(Path, usize)]) -> Alignment {
        let mut a = Alignment::new();
        for (p, s) in starts {
            a.insert(
                p.clone(),
                Span {
                    start: *s,
                    end: s + 1,
                },
            );
        }
        a
    }

    #[test]
    fn eight_orderings() {
        let all = enumerate_orderings(&tree(), 1000);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], tree());
        let five = enumerate_orderings(&tree(), 5);
        assert_eq!(five.len(), 5);
        assert_eq!(five[..], all[..5]);
    }

    #[test]
    fn chain_has_one_ordering() {
        let chain = text_to_tree("(a :ARG0 (b :ARG1 (c :mod d)))").unwrap();
        assert_eq!(enumerate_orderings(&chain, 10), vec![chain]);
    }

    #[test]
    fn identical_siblings_are_not_repeated() {
        let t = text_to_tree("(a :mod (b) :mod (b) :mod (c))").unwrap();
        assert_eq!(enumerate_orderings(&t, 100).len(), 3);
    }

    #[test]
    fn score_examples() {
        let t = text_to_tree("(a :x (b) :y (c))").unwrap();
        assert_eq!(
            order_score(&t, &flat(&[(vec![0], 0), (vec![1], 7)])).value(),
            1.0
        );
        assert_eq!(
            order_score(&t, &flat(&[(vec![0], 7), (vec![1], 0)])).value(),
            0.0
        );
        assert_eq!(order_score(&t, &flat(&[(vec![0], 7)])).value(), 1.0);
    }

    #[test]
    fn word_order_example() {
        let a = parse_alignments(CRK_CAS_ALIGNMENT, &tree()).unwrap();
        let (best, moved) = best_ordering_with_alignment(&tree(), &a);
        assert_eq!(best, text_to_tree(CRK_CAS_WORD_ORDER_TREE).unwrap());
        assert!(order_score(&tree(), &a) < order_score(&best, &moved));
        // The bind subtree now sits first.
        assert_eq!(moved.get(&[0, 0, 0, 0]), Some(Span { start: 0, end: 1 }));
        assert_eq!(best_ordering(&best, &moved), best);
    }

    #[test]
    fn empty_alignment_keeps_tree() {
        assert_eq!(best_ordering(&tree(), &Alignment::new()), tree());
    }

    #[test]
    fn earliest_start_is_not_always_optimal() {
        // Child 0 covers {0, 10, 11}, child 1 covers {5}: putting child 1
        // first costs one inversion instead of two.
        let t = text_to_tree("(r :x (a :y (b) :z (c)) :w (d))").unwrap();
        let a = flat(&[
            (vec![0], 0),
            (vec![0, 0], 10),
            (vec![0, 1], 11),
            (vec![1], 5),
        ]);
        let best = best_ordering(&t, &a);
        assert_eq!(best.children[0].1.label, "d");
        assert_eq!(
            order_score(&best, &best_ordering_with_alignment(&t, &a).1).inversions,
            1
        );
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }
}
