//! Super-character vocabulary: single characters plus whole relation labels
//! and POS tags.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::corpus::Document;
use crate::seq::codec::anonymize;
use crate::seq::pos::pos_token;
use crate::seq::tree::{SeqKind, SeqTree};

pub const PAD: &str = "<pad>";
pub const UNK: &str = "<unk>";
pub const END: &str = "</s>";

/// Size range the vocabulary is expected to land in for full training
/// corpora.
pub const EXPECTED_SIZE: std::ops::RangeInclusive<usize> = 150..=200;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VocabError {
    #[error("line {line}: duplicate token `{token}`")]
    Duplicate { line: usize, token: String },
    #[error("vocabulary file lacks the special tokens")]
    MissingSpecials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocab {
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
    longest: usize,
}

/// Encoded text; `unknown` counts characters replaced by the unknown token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenSeq {
    pub ids: Vec<u32>,
    pub text: String,
    pub unknown: usize,
}

impl Vocab {
    fn from_tokens(tokens: Vec<String>) -> Result<Self, VocabError> {
        let mut ids = HashMap::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            if ids.insert(tok.clone(), i as u32).is_some() {
                return Err(VocabError::Duplicate {
                    line: i + 1,
                    token: tok.clone(),
                });
            }
        }
        if [PAD, UNK, END].iter().any(|s| !ids.contains_key(*s)) {
            return Err(VocabError::MissingSpecials);
        }
        let longest = tokens.iter().map(|t| t.chars().count()).max().unwrap_or(1);
        Ok(Vocab {
            tokens,
            ids,
            longest,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn unk_id(&self) -> u32 {
        self.ids[UNK]
    }

    pub fn in_expected_range(&self) -> bool {
        EXPECTED_SIZE.contains(&self.len())
    }

    /// One token per line; the line number is the id.
    pub fn to_file_text(&self) -> String {
        let mut out = String::new();
        for tok in &self.tokens {
            out.push_str(tok);
            out.push('\n');
        }
        out
    }

    pub fn from_file_text(text: &str) -> Result<Self, VocabError> {
        let text = text.strip_suffix('\n').unwrap_or(text);
        if text.is_empty() {
            return Err(VocabError::MissingSpecials);
        }
        Self::from_tokens(text.split('\n').map(String::from).collect())
    }
}

/// Builds the vocabulary of a corpus: specials, then relation labels, POS
/// tags and characters, each sorted.
///
/// Characters come from the sentences and from the seq2seq tree text of each
/// graph (labels plus the parentheses and spaces of the tree syntax).
pub fn build_vocab(corpus: &[Document], extra_pos_tags: &[String]) -> Vocab {
    let mut relations = BTreeSet::new();
    let mut chars = BTreeSet::new();
    for doc in corpus {
        chars.extend(doc.sentence.chars());
        collect_tree(&anonymize(&doc.graph), &mut relations, &mut chars);
    }
    let pos: BTreeSet<String> = extra_pos_tags.iter().map(|t| pos_token(t)).collect();

    let mut tokens: Vec<String> = [PAD, UNK, END].iter().map(|s| s.to_string()).collect();
    tokens.extend(relations);
    tokens.extend(pos);
    tokens.extend(
        chars
            .into_iter()
            .map(String::from)
            .filter(|c| ![PAD, UNK, END].contains(&c.as_str())),
    );
    Vocab::from_tokens(tokens).expect("constructed tokens are unique")
}

fn collect_tree(tree: &SeqTree, relations: &mut BTreeSet<String>, chars: &mut BTreeSet<char>) {
    chars.extend(tree.label.chars());
    if tree.kind == SeqKind::Concept {
        chars.extend(['(', ')']);
    }
    for (relation, child) in &tree.children {
        chars.insert(' ');
        relations.insert(format!(":{relation}"));
        collect_tree(child, relations, chars);
    }
}

/// Greedy longest-match tokenization.
pub fn encode(text: &str, vocab: &Vocab) -> TokenSeq {
    let bounds: Vec<usize> = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(text.len()))
        .collect();
    let n = bounds.len() - 1;
    let mut ids = Vec::new();
    let mut unknown = 0;
    let mut i = 0;
    while i < n {
        let max = vocab.longest.min(n - i);
        let hit = (1..=max).rev().find_map(|len| {
            vocab
                .id(&text[bounds[i]..bounds[i + len]])
                .map(|id| (id, len))
        });
        match hit {
            Some((id, len)) => {
                ids.push(id);
                i += len;
            }
            None => {
                ids.push(vocab.unk_id());
                unknown += 1;
                i += 1;
            }
        }
    }
    TokenSeq {
        ids,
        text: text.to_string(),
        unknown,
    }
}

/// Concatenates the tokens; padding and end markers print as nothing.
pub fn decode(seq: &TokenSeq, vocab: &Vocab) -> String {
    seq.ids
        .iter()
        .filter_map(|&id| vocab.token(id))
        .filter(|t| *t != PAD && *t != END)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_corpus;

    fn vocab(extra: &[&str]) -> Vocab {
        let mut tokens: Vec<String> = [PAD, UNK, END].iter().map(|s| s.to_string()).collect();
        tokens.extend(extra.iter().map(|s| s.to_string()));
        Vocab::from_tokens(tokens).unwrap()
    }

    #[test]
    fn relation_is_one_token() {
        let v = vocab(&[":ARG0", " ", "(", ")", "c", "e", "l"]);
        let seq = encode(":ARG0 (cell)", &v);
        assert_eq!(seq.ids.len(), 8);
        assert_eq!(seq.ids[0], v.id(":ARG0").unwrap());
        assert_eq!(seq.unknown, 0);
        assert_eq!(decode(&seq, &v), ":ARG0 (cell)");
    }

    #[test]
    fn longest_match_wins() {
        let v = vocab(&[":ARG1", ":ARG10", "0"]);
        assert_eq!(encode(":ARG10", &v).ids, vec![v.id(":ARG10").unwrap()]);
        assert_eq!(
            encode(":ARG100", &v).ids,
            vec![v.id(":ARG10").unwrap(), v.id("0").unwrap()]
        );
    }

    #[test]
    fn unknown_characters_are_counted() {
        let v = vocab(&["a"]);
        let seq = encode("aXa", &v);
        assert_eq!(seq.ids, vec![3, v.unk_id(), 3]);
        assert_eq!(seq.unknown, 1);
        assert_eq!(decode(&seq, &v), format!("a{UNK}a"));
    }

    #[test]
    fn empty_corpus_has_specials_only() {
        let v = build_vocab(&[], &[]);
        assert_eq!(v.tokens(), &[PAD, UNK, END]);
    }

    #[test]
    fn construction_order_and_size() {
        let c = parse_corpus(
            "# ::id 1\n# ::snt abcdefghijklm\n(w / want :ARG0 (b / boy) :ARG1 (g / go))\n\n\
             # ::id 2\n# ::snt nopqrstuvwxyz\n(z / zap :ARG0 (q / quick))\n",
        );
        let v = build_vocab(&c.documents, &["NN".to_string(), "DT".to_string()]);
        // 3 specials + 2 relations + 2 tags + 26 letters + "(", ")", " "
        assert_eq!(v.len(), 3 + 2 + 2 + 26 + 3);
        assert_eq!(&v.tokens()[3..7], &[":ARG0", ":ARG1", "⟨DT⟩", "⟨NN⟩"]);
        assert_eq!(&v.tokens()[7..10], &[" ", "(", ")"]);
        assert!(!v.in_expected_range());
    }

    #[test]
    fn file_round_trip() {
        let v = vocab(&[" ", ":mod", "⟨NNP⟩", "é"]);
        assert_eq!(Vocab::from_file_text(&v.to_file_text()).unwrap(), v);
        assert!(matches!(
            Vocab::from_file_text("<pad>\n<unk>\n</s>\na\na\n"),
            Err(VocabError::Duplicate { line: 5, .. })
        ));
        assert_eq!(
            Vocab::from_file_text("a\n"),
            Err(VocabError::MissingSpecials)
        );
    }
}
