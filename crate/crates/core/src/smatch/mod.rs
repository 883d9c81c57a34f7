//! Smatch: the best matched-triple count over injective variable mappings.
//!
//! `smatch_hill` is the usual restarted hill climber. `smatch_exact` searches
//! every mapping and is meant for small graphs and as a test oracle.

mod exact;
mod hill;
mod problem;
mod score;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::AmrGraph;
use crate::triples::{to_triples, TripleSet};

pub use score::SmatchScore;

use problem::{Mapping, MatchProblem};

pub const DEFAULT_RESTARTS: usize = 4;
pub const DEFAULT_MAX_VARS: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SmatchError {
    #[error("exact matching limited to {max} variables, both graphs have at least {vars}")]
    TooLarge { vars: usize, max: usize },
    #[error("{gold} gold graphs but {test} test graphs")]
    LengthMismatch { gold: usize, test: usize },
}

/// Test variable → gold variable. Injective; unmapped variables are absent.
pub type VariableMapping = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq)]
pub struct SmatchMatch {
    pub score: SmatchScore,
    pub mapping: VariableMapping,
}

fn finish(p: &MatchProblem, matched: u32, mapping: &Mapping) -> SmatchMatch {
    let named = mapping
        .iter()
        .enumerate()
        .filter_map(|(t, g)| g.map(|g| (p.test_vars[t].clone(), p.gold_vars[g].clone())))
        .collect();
    SmatchMatch {
        score: SmatchScore::from_counts(matched as usize, p.gold_total, p.test_total),
        mapping: named,
    }
}

/// `hint` in problem indices; pairs naming variables absent here are skipped.
fn hint_mapping(p: &MatchProblem, hint: &VariableMapping) -> Mapping {
    let mut used = vec![false; p.n_gold()];
    p.test_vars
        .iter()
        .map(|t| {
            let g = p.gold_vars.get_index_of(hint.get(t)?)?;
            (!std::mem::replace(&mut used[g], true)).then_some(g)
        })
        .collect()
}

fn hill_search(
    p: &MatchProblem,
    restarts: usize,
    seed: u64,
    stream: u64,
    hint: Option<&VariableMapping>,
) -> (u32, Mapping) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut best: Option<(u32, Mapping)> = hint.map(|h| {
        let mut mapping = hint_mapping(p, h);
        (hill::climb(p, &mut mapping), mapping)
    });
    for r in 0..restarts.max(1) {
        let mut mapping = if r == 0 {
            hill::greedy_init(p)
        } else {
            hill::random_init(p, &mut rng)
        };
        let score = hill::climb(p, &mut mapping);
        if best.as_ref().is_none_or(|(b, _)| score > *b) {
            best = Some((score, mapping));
        }
    }
    best.expect("at least one restart")
}

/// Hill climbing over triple sets. `stream` selects an independent random
/// sequence for the same seed, so parallel pairs never share RNG state.
pub fn match_hill(
    gold: &TripleSet,
    test: &TripleSet,
    restarts: usize,
    seed: u64,
    stream: u64,
) -> SmatchMatch {
    let p = MatchProblem::new(gold, test);
    let (matched, mapping) = hill_search(&p, restarts, seed, stream, None);
    finish(&p, matched, &mapping)
}

/// [`match_hill`] that also climbs from `hint`, typically the mapping found
/// for a larger triple set of the same graphs. The random restarts are the
/// same as without a hint.
pub fn match_hill_hinted(
    gold: &TripleSet,
    test: &TripleSet,
    restarts: usize,
    seed: u64,
    stream: u64,
    hint: &VariableMapping,
) -> SmatchMatch {
    let p = MatchProblem::new(gold, test);
    let (matched, mapping) = hill_search(&p, restarts, seed, stream, Some(hint));
    finish(&p, matched, &mapping)
}

pub fn match_exact(
    gold: &TripleSet,
    test: &TripleSet,
    max_vars: usize,
) -> Result<SmatchMatch, SmatchError> {
    let p = MatchProblem::new(gold, test);
    let vars = p.n_test().min(p.n_gold());
    if vars > max_vars {
        return Err(SmatchError::TooLarge {
            vars,
            max: max_vars,
        });
    }
    let mut start = hill::greedy_init(&p);
    hill::climb(&p, &mut start);
    let (matched, mapping) = exact::solve(&p, start);
    Ok(finish(&p, matched, &mapping))
}

pub fn smatch_exact(
    gold: &AmrGraph,
    test: &AmrGraph,
    max_vars: usize,
) -> Result<SmatchScore, SmatchError> {
    match_exact(&to_triples(gold), &to_triples(test), max_vars).map(|m| m.score)
}

pub fn smatch_hill(gold: &AmrGraph, test: &AmrGraph, restarts: usize, seed: u64) -> SmatchScore {
    match_hill(&to_triples(gold), &to_triples(test), restarts, seed, 0).score
}

/// Exact when both sides fit `max_vars`, hill climbing otherwise.
pub fn match_auto(
    gold: &TripleSet,
    test: &TripleSet,
    restarts: usize,
    seed: u64,
    stream: u64,
    max_vars: usize,
) -> SmatchMatch {
    match_exact(gold, test, max_vars)
        .unwrap_or_else(|_| match_hill(gold, test, restarts, seed, stream))
}

/// Per-pair scores of aligned triple sets; pair `i` uses RNG stream `i`.
pub fn score_pairs(
    pairs: &[(TripleSet, TripleSet)],
    restarts: usize,
    seed: u64,
) -> Vec<SmatchScore> {
    pairs
        .par_iter()
        .enumerate()
        .map(|(i, (g, t))| match_hill(g, t, restarts, seed, i as u64).score)
        .collect()
}

/// Micro-averaged Smatch over aligned graph lists.
pub fn corpus_smatch(
    gold: &[AmrGraph],
    test: &[AmrGraph],
    restarts: usize,
    seed: u64,
) -> Result<SmatchScore, SmatchError> {
    if gold.len() != test.len() {
        return Err(SmatchError::LengthMismatch {
            gold: gold.len(),
            test: test.len(),
        });
    }
    let pairs: Vec<(TripleSet, TripleSet)> = gold
        .par_iter()
        .zip(test.par_iter())
        .map(|(g, t)| (to_triples(g), to_triples(t)))
        .collect();
    Ok(SmatchScore::micro(&score_pairs(&pairs, restarts, seed)))
}
