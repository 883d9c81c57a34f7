//! Seq2seq representation: variable-free trees, restoration, and the
//! super-character codec.

pub mod codec;
pub mod pos;
pub mod trainer;
pub mod tree;
pub mod vocab;

pub use codec::{anonymize, restorable, restore, restore_tree};
pub use pos::{pos_annotate, read_pos_file};
pub use trainer::TrainerConfig;
pub use tree::{text_to_tree, tree_to_text, SeqKind, SeqTree};
pub use vocab::{build_vocab, decode, encode, TokenSeq, Vocab};
