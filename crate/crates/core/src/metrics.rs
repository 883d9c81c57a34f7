//! Corpus evaluation: fine-grained categories and sentence-length buckets.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::LazyLock;

use rayon::prelude::*;
use regex::Regex;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Document;
use crate::graph::AmrGraph;
use crate::postprocess::name_string;
use crate::seq::codec::WIKI;
use crate::smatch::{match_hill, match_hill_hinted, SmatchMatch, SmatchScore, VariableMapping};
use crate::triples::{to_triples, Triple, TripleSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdMismatch {
    #[error("document `{0}` is missing from the test corpus")]
    MissingTest(String),
    #[error("document `{0}` is not in the gold corpus")]
    MissingGold(String),
    #[error("id `{0}` occurs more than once")]
    Duplicate(String),
}

/// Test documents lined up with the gold corpus by id, in gold order.
pub fn pair_by_id<'a>(
    gold: &'a [Document],
    test: &'a [Document],
) -> Result<Vec<(&'a Document, &'a Document)>, IdMismatch> {
    let mut by_id: HashMap<&str, &Document> = HashMap::new();
    for doc in test {
        if by_id.insert(&doc.id, doc).is_some() {
            return Err(IdMismatch::Duplicate(doc.id.clone()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::with_capacity(gold.len());
    for g in gold {
        if !seen.insert(g.id.as_str()) {
            return Err(IdMismatch::Duplicate(g.id.clone()));
        }
        let t = by_id
            .get(g.id.as_str())
            .ok_or_else(|| IdMismatch::MissingTest(g.id.clone()))?;
        pairs.push((g, *t));
    }
    if let Some(extra) = test.iter().find(|t| !seen.contains(t.id.as_str())) {
        return Err(IdMismatch::MissingGold(extra.id.clone()));
    }
    Ok(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Category {
    Smatch,
    Unlabeled,
    NoWsd,
    NamedEntities,
    Wikification,
    Negation,
    Concepts,
    Reentrancies,
    Srl,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::Smatch,
        Category::Unlabeled,
        Category::NoWsd,
        Category::NamedEntities,
        Category::Wikification,
        Category::Negation,
        Category::Concepts,
        Category::Reentrancies,
        Category::Srl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Smatch => "Smatch",
            Category::Unlabeled => "Unlabeled",
            Category::NoWsd => "No WSD",
            Category::NamedEntities => "Named Entities",
            Category::Wikification => "Wikification",
            Category::Negation => "Negation",
            Category::Concepts => "Concepts",
            Category::Reentrancies => "Reentrancies",
            Category::Srl => "SRL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CategoryScore {
    pub category: &'static str,
    pub score: SmatchScore,
    /// Reported F; 1.0 when neither side has anything in this category.
    pub f: f64,
    pub empty: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FineGrainedReport {
    pub categories: Vec<CategoryScore>,
}

impl FineGrainedReport {
    pub fn f(&self, category: Category) -> f64 {
        self.get(category).f
    }

    pub fn get(&self, category: Category) -> &CategoryScore {
        self.categories
            .iter()
            .find(|c| c.category == category.name())
            .expect("all categories present")
    }

    /// `category,f`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("category,f\n");
        for c in &self.categories {
            let _ = writeln!(out, "{},{:.4}", c.category, c.f);
        }
        out
    }
}

static SENSE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"-\d+$").unwrap());

/// Every relation and attribute label replaced by one label.
pub fn unlabel(set: &TripleSet) -> TripleSet {
    set.map(|t| match t {
        Triple::Relation { source, target, .. } => Triple::Relation {
            source: source.clone(),
            relation: "rel".into(),
            target: target.clone(),
        },
        Triple::Attribute { var, value, .. } => Triple::Attribute {
            var: var.clone(),
            relation: "rel".into(),
            value: value.clone(),
        },
        other => other.clone(),
    })
}

/// Concepts without `-NN` sense suffixes.
pub fn strip_senses(set: &TripleSet) -> TripleSet {
    let strip = |c: &str| SENSE.replace(c, "").into_owned();
    set.map(|t| match t {
        Triple::Instance { var, concept } => Triple::Instance {
            var: var.clone(),
            concept: strip(concept),
        },
        Triple::Top { var, concept } => Triple::Top {
            var: var.clone(),
            concept: strip(concept),
        },
        other => other.clone(),
    })
}

/// Triples mentioning a variable that is the target of two or more
/// relations.
pub fn reentrant_triples(set: &TripleSet) -> TripleSet {
    let mut indegree: HashMap<&str, usize> = HashMap::new();
    for t in set {
        if let Triple::Relation { target, .. } = t {
            *indegree.entry(target).or_default() += 1;
        }
    }
    set.filter(|t| t.vars().any(|v| indegree.get(v).is_some_and(|&d| d >= 2)))
}

static ARG: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^ARG\d+(-of)?$").unwrap());

/// Relation triples labelled `ARGn` (inverses are already normalized).
pub fn srl_triples(set: &TripleSet) -> TripleSet {
    set.filter(|t| matches!(t, Triple::Relation { relation, .. } if ARG.is_match(relation)))
}

fn concepts(g: &AmrGraph) -> Vec<String> {
    g.nodes.values().cloned().collect()
}

fn named_entities(g: &AmrGraph) -> Vec<String> {
    g.nodes
        .iter()
        .filter_map(|(v, c)| name_string(g, v).map(|n| format!("{c}\t{n}")))
        .collect()
}

fn wiki_links(g: &AmrGraph) -> Vec<String> {
    g.edges
        .iter()
        .filter(|e| e.relation == WIKI)
        .filter_map(|e| {
            let link = &e.target.as_const()?.value;
            Some(format!(
                "{}\t{link}",
                name_string(g, &e.source).unwrap_or_default()
            ))
        })
        .collect()
}

fn negated(g: &AmrGraph) -> Vec<String> {
    g.edges
        .iter()
        .filter(|e| e.relation == "polarity" && e.target.as_const().is_some_and(|c| c.value == "-"))
        .filter_map(|e| g.concept(&e.source).map(String::from))
        .collect()
}

/// Multiset overlap of two label lists as a score.
fn bag_score(gold: Vec<String>, test: Vec<String>) -> SmatchScore {
    let mut pool: HashMap<&str, usize> = HashMap::new();
    for g in &gold {
        *pool.entry(g).or_default() += 1;
    }
    let mut matched = 0;
    for t in &test {
        if let Some(n) = pool.get_mut(t.as_str()).filter(|n| **n > 0) {
            *n -= 1;
            matched += 1;
        }
    }
    SmatchScore::from_counts(matched, gold.len(), test.len())
}

/// Hill-climbing Smatch of each pair; pair `i` of category `c` draws from
/// RNG stream `c * 2^32 + i`. With `hints`, pair `i` also climbs from
/// `hints[i]`.
fn smatch_category(
    pairs: &[(TripleSet, TripleSet)],
    transform: impl Fn(&TripleSet) -> TripleSet + Sync,
    category: usize,
    restarts: usize,
    seed: u64,
    hints: Option<&[VariableMapping]>,
) -> Vec<SmatchMatch> {
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (g, t))| {
            let stream = ((category as u64) << 32) | i as u64;
            let (g, t) = (transform(g), transform(t));
            match hints {
                Some(h) => match_hill_hinted(&g, &t, restarts, seed, stream, &h[i]),
                None => match_hill(&g, &t, restarts, seed, stream),
            }
        })
        .collect()
}

fn category_score(category: Category, scores: &[SmatchScore]) -> CategoryScore {
    let score = SmatchScore::micro(scores);
    let empty = score.is_empty();
    CategoryScore {
        category: category.name(),
        f: if empty { 1.0 } else { score.f },
        score,
        empty,
    }
}

/// Scores all nine categories over documents paired by id.
pub fn fine_grained(
    gold: &[Document],
    test: &[Document],
    restarts: usize,
    seed: u64,
) -> Result<FineGrainedReport, IdMismatch> {
    let docs = pair_by_id(gold, test)?;
    let pairs: Vec<(TripleSet, TripleSet)> = docs
        .par_iter()
        .map(|(g, t)| (to_triples(&g.graph), to_triples(&t.graph)))
        .collect();
    let bags = |f: fn(&AmrGraph) -> Vec<String>| -> Vec<SmatchScore> {
        docs.iter()
            .map(|(g, t)| bag_score(f(&g.graph), f(&t.graph)))
            .collect()
    };
    // Full Smatch first; its mappings seed the rewritten and restricted
    // triple sets, which have fewer anchors for the search.
    let full = smatch_category(&pairs, TripleSet::clone, 0, restarts, seed, None);
    let hints: Vec<VariableMapping> = full.iter().map(|m| m.mapping.clone()).collect();
    let hinted = |transform: fn(&TripleSet) -> TripleSet, c: usize| -> Vec<SmatchScore> {
        smatch_category(&pairs, transform, c, restarts, seed, Some(&hints))
            .into_iter()
            .map(|m| m.score)
            .collect()
    };
    let categories = Category::ALL
        .iter()
        .enumerate()
        .map(|(c, &category)| {
            let scores = match category {
                Category::Smatch => full.iter().map(|m| m.score).collect(),
                Category::Unlabeled => hinted(unlabel, c),
                Category::NoWsd => hinted(strip_senses, c),
                Category::Reentrancies => hinted(reentrant_triples, c),
                Category::Srl => hinted(srl_triples, c),
                Category::Concepts => bags(concepts),
                Category::NamedEntities => bags(named_entities),
                Category::Wikification => bags(wiki_links),
                Category::Negation => bags(negated),
            };
            category_score(category, &scores)
        })
        .collect();
    Ok(FineGrainedReport { categories })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BucketRow {
    pub max_len: usize,
    pub count: usize,
    /// None for an empty bucket.
    pub score: Option<SmatchScore>,
}

/// Cumulative buckets: a document enters every bucket whose edge is at
/// least its gold sentence length in tokens.
pub fn length_buckets(
    gold: &[Document],
    test: &[Document],
    edges: &[usize],
    restarts: usize,
    seed: u64,
) -> Result<Vec<BucketRow>, IdMismatch> {
    let docs = pair_by_id(gold, test)?;
    let scored: Vec<(usize, SmatchScore)> = docs
        .par_iter()
        .enumerate()
        .map(|(i, (g, t))| {
            let s = match_hill(
                &to_triples(&g.graph),
                &to_triples(&t.graph),
                restarts,
                seed,
                i as u64,
            );
            (g.tokens().count(), s.score)
        })
        .collect();
    Ok(edges
        .iter()
        .map(|&max_len| {
            let inside: Vec<&SmatchScore> = scored
                .iter()
                .filter(|(len, _)| *len <= max_len)
                .map(|(_, s)| s)
                .collect();
            BucketRow {
                max_len,
                count: inside.len(),
                score: (!inside.is_empty()).then(|| SmatchScore::micro(inside)),
            }
        })
        .collect())
}

/// `max_len,count,f` with a blank f for empty buckets.
pub fn buckets_to_csv(rows: &[BucketRow]) -> String {
    let mut out = String::from("max_len,count,f\n");
    for r in rows {
        let f = r.score.map(|s| format!("{:.4}", s.f)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{f}", r.max_len, r.count);
    }
    out
}
