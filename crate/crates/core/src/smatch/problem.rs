//! Triple matching as an assignment problem over variable indices.
//!
//! The matched count of a mapping splits into a per-variable part (instance,
//! attribute and top triples, which depend on one variable) and a pairwise
//! part (relation triples, which depend on two).

use std::collections::HashMap;

use indexmap::IndexSet;

use crate::triples::{Triple, TripleSet};

/// test variable index → gold variable index.
pub(crate) type Mapping = Vec<Option<usize>>;

#[derive(Debug)]
pub(crate) struct RelTriple {
    pub a: usize,
    pub b: usize,
    /// (gold source, gold target, weight)
    pub cands: Vec<(usize, usize, u32)>,
}

/// (triple kind, relation, concept or value).
type UnaryKey<'a> = (u8, &'a str, &'a str);

#[derive(Debug)]
pub(crate) struct MatchProblem {
    pub test_vars: IndexSet<String>,
    pub gold_vars: IndexSet<String>,
    /// unary[t][g]
    pub unary: Vec<Vec<u32>>,
    pub rels: Vec<RelTriple>,
    /// test variable → indices into `rels`
    pub incident: Vec<Vec<usize>>,
    pub test_total: usize,
    pub gold_total: usize,
}

fn vars_of(set: &TripleSet) -> IndexSet<String> {
    set.iter()
        .flat_map(|t| t.vars())
        .map(String::from)
        .collect()
}

impl MatchProblem {
    pub fn new(gold: &TripleSet, test: &TripleSet) -> Self {
        let test_vars = vars_of(test);
        let gold_vars = vars_of(gold);
        let (n, m) = (test_vars.len(), gold_vars.len());
        let tix = |v: &str| test_vars.get_index_of(v).unwrap();
        let gix = |v: &str| gold_vars.get_index_of(v).unwrap();

        // Per-variable triples keyed by what must agree: (kind, relation, value).
        let mut gold_unary: HashMap<UnaryKey, Vec<(usize, u32)>> = HashMap::new();
        let mut gold_rel: HashMap<&str, HashMap<(usize, usize), u32>> = HashMap::new();
        for t in gold {
            match t {
                Triple::Relation {
                    source,
                    relation,
                    target,
                } => {
                    *gold_rel
                        .entry(relation)
                        .or_default()
                        .entry((gix(source), gix(target)))
                        .or_default() += 1;
                }
                other => {
                    let (key, var) = unary_key(other);
                    let slot = gold_unary.entry(key).or_default();
                    let g = gix(var);
                    match slot.iter_mut().find(|(x, _)| *x == g) {
                        Some((_, c)) => *c += 1,
                        None => slot.push((g, 1)),
                    }
                }
            }
        }

        let mut test_unary: HashMap<(usize, (u8, &str, &str)), u32> = HashMap::new();
        let mut test_rel: indexmap::IndexMap<(usize, &str, usize), u32> = Default::default();
        for t in test {
            match t {
                Triple::Relation {
                    source,
                    relation,
                    target,
                } => {
                    *test_rel
                        .entry((tix(source), relation.as_str(), tix(target)))
                        .or_default() += 1
                }
                other => {
                    let (key, var) = unary_key(other);
                    *test_unary.entry((tix(var), key)).or_default() += 1;
                }
            }
        }

        let mut unary = vec![vec![0u32; m]; n];
        for ((t, key), ct) in &test_unary {
            for &(g, cg) in gold_unary.get(key).into_iter().flatten() {
                unary[*t][g] += (*ct).min(cg);
            }
        }

        let mut rels = Vec::new();
        let mut incident = vec![Vec::new(); n];
        for ((a, relation, b), ct) in test_rel {
            let mut cands: Vec<(usize, usize, u32)> = gold_rel
                .get(relation)
                .into_iter()
                .flatten()
                .filter(|((g1, g2), _)| (a == b) == (g1 == g2))
                .map(|(&(g1, g2), &cg)| (g1, g2, ct.min(cg)))
                .collect();
            if cands.is_empty() {
                continue;
            }
            cands.sort_unstable();
            let k = rels.len();
            incident[a].push(k);
            if b != a {
                incident[b].push(k);
            }
            rels.push(RelTriple { a, b, cands });
        }

        MatchProblem {
            test_vars,
            gold_vars,
            unary,
            rels,
            incident,
            test_total: test.len(),
            gold_total: gold.len(),
        }
    }

    pub fn n_test(&self) -> usize {
        self.test_vars.len()
    }

    pub fn n_gold(&self) -> usize {
        self.gold_vars.len()
    }

    pub fn rel_match(&self, k: usize, mapping: &Mapping) -> u32 {
        let r = &self.rels[k];
        match (mapping[r.a], mapping[r.b]) {
            (Some(ga), Some(gb)) => r
                .cands
                .iter()
                .find(|(g1, g2, _)| *g1 == ga && *g2 == gb)
                .map_or(0, |c| c.2),
            _ => 0,
        }
    }

    fn unary_at(&self, t: usize, mapping: &Mapping) -> u32 {
        mapping[t].map_or(0, |g| self.unary[t][g])
    }

    pub fn score(&self, mapping: &Mapping) -> u32 {
        let u: u32 = (0..self.n_test()).map(|t| self.unary_at(t, mapping)).sum();
        let r: u32 = (0..self.rels.len())
            .map(|k| self.rel_match(k, mapping))
            .sum();
        u + r
    }

    /// Score contribution of the triples touching `vars`.
    pub fn local_score(&self, vars: &[usize], mapping: &Mapping) -> u32 {
        let mut total = 0;
        let mut seen: Vec<usize> = Vec::new();
        for &t in vars {
            total += self.unary_at(t, mapping);
            for &k in &self.incident[t] {
                if !seen.contains(&k) {
                    seen.push(k);
                    total += self.rel_match(k, mapping);
                }
            }
        }
        total
    }
}

/// Key under which a single-variable triple matches, plus its variable.
fn unary_key(t: &Triple) -> ((u8, &str, &str), &str) {
    match t {
        Triple::Top { var, concept } => ((0, "TOP", concept), var),
        Triple::Instance { var, concept } => ((1, "instance", concept), var),
        Triple::Attribute {
            var,
            relation,
            value,
        } => ((2, relation, value), var),
        Triple::Relation { .. } => unreachable!("relation triples are pairwise"),
    }
}
