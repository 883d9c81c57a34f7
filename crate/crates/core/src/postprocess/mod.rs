//! Turning raw decoder output into valid graphs.

mod prune;
mod repair;
mod wiki;

pub use prune::prune;
pub use repair::{repair, Unrepairable};
pub use wiki::{
    build_wiki_table, name_string, wikify, wikify_with_threshold, NameStats, WikiTable,
    WikiTableError, WIKI_THRESHOLD,
};

use crate::seq::tree::SeqTree;

/// Label of the fallback graph used when output cannot be repaired.
pub const DEFAULT_CONCEPT: &str = "amr-unknown";

/// `(amr-unknown)`
pub fn default_amr() -> SeqTree {
    SeqTree::concept(DEFAULT_CONCEPT)
}

/// Repairs `text` and parses it, falling back to [`default_amr`].
pub fn repair_or_default(text: &str) -> (SeqTree, bool) {
    match repair(text)
        .ok()
        .and_then(|t| crate::seq::tree::text_to_tree(&t).ok())
    {
        Some(tree) => (tree, true),
        None => (default_amr(), false),
    }
}
