//! Steepest-ascent hill climbing over injective variable mappings.

use rand::seq::SliceRandom;
use rand::Rng;

use super::problem::{Mapping, MatchProblem};

/// Each unmapped test variable takes the free gold variable with the highest
/// single-variable score, if that score is positive. Lowest index wins ties.
pub(crate) fn greedy_init(p: &MatchProblem) -> Mapping {
    let mut used = vec![false; p.n_gold()];
    let mut mapping = vec![None; p.n_test()];
    for (t, slot) in mapping.iter_mut().enumerate() {
        let best = (0..p.n_gold())
            .filter(|&g| !used[g] && p.unary[t][g] > 0)
            .max_by_key(|&g| (p.unary[t][g], std::cmp::Reverse(g)));
        if let Some(g) = best {
            used[g] = true;
            *slot = Some(g);
        }
    }
    mapping
}

/// Pairs a random ordering of test variables with a random ordering of gold
/// variables.
pub(crate) fn random_init<R: Rng>(p: &MatchProblem, rng: &mut R) -> Mapping {
    let mut tests: Vec<usize> = (0..p.n_test()).collect();
    let mut golds: Vec<usize> = (0..p.n_gold()).collect();
    tests.shuffle(rng);
    golds.shuffle(rng);
    let mut mapping = vec![None; p.n_test()];
    for (t, g) in tests.into_iter().zip(golds) {
        mapping[t] = Some(g);
    }
    mapping
}

/// Climbs from `mapping` until no single reassignment or swap improves the
/// score. Returns the final score.
pub(crate) fn climb(p: &MatchProblem, mapping: &mut Mapping) -> u32 {
    let mut owner: Vec<Option<usize>> = vec![None; p.n_gold()];
    for (t, g) in mapping.iter().enumerate() {
        if let Some(g) = g {
            owner[*g] = Some(t);
        }
    }
    let mut score = p.score(mapping);
    loop {
        // (gain, test var, gold var); first strictly best move wins.
        let mut best: Option<(i64, usize, usize)> = None;
        for t in 0..p.n_test() {
            for g in 0..p.n_gold() {
                if mapping[t] == Some(g) {
                    continue;
                }
                let gain = match owner[g] {
                    None => delta(p, mapping, &[t], |m| m[t] = Some(g)),
                    Some(t2) => {
                        let old = mapping[t];
                        delta(p, mapping, &[t, t2], |m| {
                            m[t] = Some(g);
                            m[t2] = old;
                        })
                    }
                };
                if gain > 0 && best.is_none_or(|(b, _, _)| gain > b) {
                    best = Some((gain, t, g));
                }
            }
        }
        let Some((gain, t, g)) = best else {
            return score;
        };
        let old = mapping[t];
        if let Some(t2) = owner[g] {
            mapping[t2] = old;
        }
        if let Some(o) = old {
            owner[o] = owner[g];
        }
        mapping[t] = Some(g);
        owner[g] = Some(t);
        score += gain as u32;
        debug_assert_eq!(score, p.score(mapping));
    }
}

fn delta(
    p: &MatchProblem,
    mapping: &mut Mapping,
    vars: &[usize],
    apply: impl Fn(&mut Mapping),
) -> i64 {
    let saved: Vec<Option<usize>> = vars.iter().map(|&v| mapping[v]).collect();
    let before = p.local_score(vars, mapping) as i64;
    apply(mapping);
    let after = p.local_score(vars, mapping) as i64;
    for (&v, s) in vars.iter().zip(saved) {
        mapping[v] = s;
    }
    after - before
}
