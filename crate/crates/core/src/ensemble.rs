//! Choosing one parse per sentence from several parsers' outputs.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Document;
use crate::graph::AmrGraph;
use crate::metrics::IdMismatch;
use crate::smatch::{match_auto, DEFAULT_MAX_VARS, DEFAULT_RESTARTS};
use crate::triples::{to_triples, TripleSet};

/// Row sums closer than this count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoringOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Pairs where both sides fit are scored exactly.
    pub max_exact_vars: usize,
}

impl ScoringOptions {
    pub fn new(seed: u64) -> Self {
        ScoringOptions {
            restarts: DEFAULT_RESTARTS,
            seed,
            max_exact_vars: DEFAULT_MAX_VARS,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    fn f(&self, gold: &TripleSet, test: &TripleSet, stream: u64) -> f64 {
        match_auto(
            gold,
            test,
            self.restarts,
            self.seed,
            stream,
            self.max_exact_vars,
        )
        .score
        .f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub parser: String,
    pub graph: AmrGraph,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet {
    pub id: String,
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CandidateError {
    #[error("document `{0}` has no candidates")]
    Empty(String),
    #[error("document `{id}` has two candidates from parser `{parser}`")]
    DuplicateParser { id: String, parser: String },
    #[error("no parser runs given")]
    NoRuns,
    #[error(transparent)]
    Ids(#[from] IdMismatch),
}

impl CandidateSet {
    pub fn new(id: impl Into<String>, candidates: Vec<Candidate>) -> Result<Self, CandidateError> {
        let id = id.into();
        if candidates.is_empty() {
            return Err(CandidateError::Empty(id));
        }
        let mut seen = HashSet::new();
        for c in &candidates {
            if !seen.insert(c.parser.as_str()) {
                return Err(CandidateError::DuplicateParser {
                    id,
                    parser: c.parser.clone(),
                });
            }
        }
        Ok(CandidateSet { id, candidates })
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Selection {
    pub index: usize,
    /// Pairwise F; `None` on the diagonal. Empty for a single candidate.
    pub matrix: Vec<Vec<Option<f64>>>,
    pub row_sums: Vec<f64>,
}

/// Lowest index whose value is within [`TIE_TOLERANCE`] of the maximum.
fn argmax_first(values: &[f64]) -> usize {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .position(|&v| v >= max - TIE_TOLERANCE)
        .unwrap_or(0)
}

/// Pair (i, j), i < j, of document `doc` uses RNG stream `doc * 2^32 + k`
/// where k enumerates the upper triangle row by row.
fn pair_stream(doc: u64, n: usize, i: usize, j: usize) -> u64 {
    let k = i * n - i * (i + 1) / 2 + (j - i - 1);
    (doc << 32) | k as u64
}

/// The candidate with the highest sum of F against all other candidates.
pub fn select(cands: &CandidateSet, opts: ScoringOptions) -> Selection {
    select_at(cands, opts, 0)
}

/// [`select`] with RNG streams offset for document number `doc`.
pub fn select_at(cands: &CandidateSet, opts: ScoringOptions, doc: u64) -> Selection {
    let n = cands.len();
    if n == 1 {
        return Selection {
            index: 0,
            matrix: Vec::new(),
            row_sums: Vec::new(),
        };
    }
    let triples: Vec<TripleSet> = cands
        .candidates
        .iter()
        .map(|c| to_triples(&c.graph))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let scores: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| opts.f(&triples[i], &triples[j], pair_stream(doc, n, i, j)))
        .collect();
    let mut matrix = vec![vec![None; n]; n];
    for (&(i, j), &f) in pairs.iter().zip(&scores) {
        matrix[i][j] = Some(f);
        matrix[j][i] = Some(f);
    }
    let row_sums: Vec<f64> = matrix
        .iter()
        .map(|row| row.iter().flatten().sum())
        .collect();
    Selection {
        index: argmax_first(&row_sums),
        matrix,
        row_sums,
    }
}

/// F of candidate `index` against gold, as used by [`oracle_select`].
pub fn gold_f(
    cands: &CandidateSet,
    gold: &AmrGraph,
    index: usize,
    opts: ScoringOptions,
    doc: u64,
) -> f64 {
    opts.f(
        &to_triples(gold),
        &to_triples(&cands.candidates[index].graph),
        (doc << 32) | index as u64,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleChoice {
    pub index: usize,
    pub f: f64,
    pub scores: Vec<f64>,
}

/// The candidate closest to gold; the lowest index wins ties.
pub fn oracle_select(
    cands: &CandidateSet,
    gold: &AmrGraph,
    opts: ScoringOptions,
    doc: u64,
) -> OracleChoice {
    let scores: Vec<f64> = (0..cands.len())
        .into_par_iter()
        .map(|i| gold_f(cands, gold, i, opts, doc))
        .collect();
    let index = argmax_first(&scores);
    OracleChoice {
        index,
        f: scores[index],
        scores,
    }
}

/// Candidate sets from parser runs lined up by document id. The first run
/// fixes document order; every run must cover the same ids.
pub fn candidate_sets(
    runs: &[(String, Vec<Document>)],
) -> Result<Vec<CandidateSet>, CandidateError> {
    let (_, first) = runs.first().ok_or(CandidateError::NoRuns)?;
    let indexed: Vec<HashMap<&str, &Document>> = runs
        .iter()
        .map(|(_, docs)| index_by_id(first, docs))
        .collect::<Result<_, _>>()?;
    first
        .iter()
        .map(|doc| {
            let candidates = runs
                .iter()
                .zip(&indexed)
                .map(|((parser, _), by_id)| Candidate {
                    parser: parser.clone(),
                    graph: by_id[doc.id.as_str()].graph.clone(),
                })
                .collect();
            CandidateSet::new(doc.id.clone(), candidates)
        })
        .collect()
}

fn index_by_id<'a>(
    reference: &'a [Document],
    docs: &'a [Document],
) -> Result<HashMap<&'a str, &'a Document>, IdMismatch> {
    Ok(crate::metrics::pair_by_id(reference, docs)?
        .into_iter()
        .map(|(_, d)| (d.id.as_str(), d))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub id: String,
    pub parser: String,
    pub selection: Selection,
}

/// Runs [`select`] on every document; returns the chosen documents (as the
/// chosen parser wrote them) and one row per document.
pub fn ensemble_corpus(
    runs: &[(String, Vec<Document>)],
    opts: ScoringOptions,
) -> Result<(Vec<Document>, Vec<EnsembleRow>), CandidateError> {
    let sets = candidate_sets(runs)?;
    let selections: Vec<Selection> = sets
        .par_iter()
        .enumerate()
        .map(|(d, set)| select_at(set, opts, d as u64))
        .collect();
    let mut docs = Vec::with_capacity(sets.len());
    let mut rows = Vec::with_capacity(sets.len());
    for (set, selection) in sets.into_iter().zip(selections) {
        let (parser, run) = &runs[selection.index];
        let chosen = run.iter().find(|d| d.id == set.id).expect("ids checked");
        docs.push(chosen.clone());
        rows.push(EnsembleRow {
            id: set.id,
            parser: parser.clone(),
            selection,
        });
    }
    Ok((docs, rows))
}

/// `id,parser,row_sum`
pub fn ensemble_csv(rows: &[EnsembleRow]) -> String {
    let mut out = String::from("id,parser,row_sum\n");
    for r in rows {
        let sum = r.selection.row_sums.get(r.selection.index).copied();
        let sum = sum.map(|s| format!("{s:.4}")).unwrap_or_default();
        let _ = writeln!(out, "{},{},{sum}", r.id, r.parser);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DocComparison {
    pub id: String,
    /// F per parser, in run order.
    pub scores: Vec<f64>,
    /// Parsers sharing the best F; more than one means a tie.
    pub winners: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub parsers: Vec<String>,
    pub docs: Vec<DocComparison>,
    /// Sole wins per parser, in run order.
    pub wins: Vec<usize>,
    pub ties: usize,
}

/// Scores every run against gold and names the best parser per document.
pub fn compare_parsers(
    gold: &[Document],
    runs: &[(String, Vec<Document>)],
    opts: ScoringOptions,
) -> Result<Comparison, CandidateError> {
    if runs.is_empty() {
        return Err(CandidateError::NoRuns);
    }
    let indexed: Vec<HashMap<&str, &Document>> = runs
        .iter()
        .map(|(_, docs)| index_by_id(gold, docs))
        .collect::<Result<_, _>>()?;
    let docs: Vec<DocComparison> = gold
        .par_iter()
        .enumerate()
        .map(|(d, g)| {
            let gold_triples = to_triples(&g.graph);
            let scores: Vec<f64> = indexed
                .iter()
                .enumerate()
                .map(|(p, by_id)| {
                    let test = to_triples(&by_id[g.id.as_str()].graph);
                    opts.f(&gold_triples, &test, ((d as u64) << 32) | p as u64)
                })
                .collect();
            let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let winners = runs
                .iter()
                .zip(&scores)
                .filter(|(_, &f)| f >= best - TIE_TOLERANCE)
                .map(|((name, _), _)| name.clone())
                .collect();
            DocComparison {
                id: g.id.clone(),
                scores,
                winners,
            }
        })
        .collect();
    let parsers: Vec<String> = runs.iter().map(|(p, _)| p.clone()).collect();
    let mut wins = vec![0; parsers.len()];
    let mut ties = 0;
    for d in &docs {
        match d.winners.as_slice() {
            [only] => wins[parsers.iter().position(|p| p == only).unwrap()] += 1,
            _ => ties += 1,
        }
    }
    Ok(Comparison {
        parsers,
        docs,
        wins,
        ties,
    })
}

impl Comparison {
    /// `id,<parser>...,winner`; tied winners are joined with `+` after
    /// `tie:`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("id,{},winner\n", self.parsers.join(","));
        for d in &self.docs {
            let scores: Vec<String> = d.scores.iter().map(|f| format!("{f:.4}")).collect();
            let winner = match d.winners.as_slice() {
                [only] => only.clone(),
                many => format!("tie:{}", many.join("+")),
            };
            let _ = writeln!(out, "{},{},{winner}", d.id, scores.join(","));
        }
        out
    }

    /// `parser,wins` plus a final `tie` row.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("parser,wins\n");
        for (p, w) in self.parsers.iter().zip(&self.wins) {
            let _ = writeln!(out, "{p},{w}");
        }
        let _ = writeln!(out, "tie,{}", self.ties);
        out
    }
}
