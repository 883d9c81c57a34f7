//! Non-neural pipeline for character-level AMR parsing: graph I/O, seq2seq
//! codecs with restoration, word-order augmentation, post-processing and
//! wikification, Smatch evaluation and pairwise-Smatch ensembling.

pub mod augment;
pub mod corpus;
pub mod ensemble;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lex;
pub mod metrics;
pub mod penman;
pub mod postprocess;
pub mod seq;
pub mod smatch;
pub mod synth;
pub mod triples;

pub use corpus::{read_corpus, Corpus, Document};
pub use error::ParseError;
pub use graph::{AmrGraph, Constant, Edge, Target, Violation};
pub use penman::{parse_penman, serialize_penman};
pub use smatch::{corpus_smatch, smatch_exact, smatch_hill, SmatchError, SmatchScore};
pub use triples::{to_triples, Triple, TripleSet};
