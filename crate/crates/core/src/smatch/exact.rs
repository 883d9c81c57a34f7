//! Branch and bound over all partial injective mappings.

use super::problem::{Mapping, MatchProblem};

struct Search<'a> {
    p: &'a MatchProblem,
    order: Vec<usize>,
    mapping: Mapping,
    used: Vec<bool>,
    best: u32,
    best_mapping: Mapping,
}

/// Returns the optimum and a mapping that attains it. `incumbent` is any
/// feasible mapping; its score seeds the bound.
pub(crate) fn solve(p: &MatchProblem, incumbent: Mapping) -> (u32, Mapping) {
    let mut order: Vec<usize> = (0..p.n_test()).collect();
    let weight = |t: usize| {
        let u = p.unary[t].iter().copied().max().unwrap_or(0);
        (u as usize + p.incident[t].len(), std::cmp::Reverse(t))
    };
    order.sort_by_key(|&t| std::cmp::Reverse(weight(t)));
    let best = p.score(&incumbent);
    let mut s = Search {
        p,
        order,
        mapping: vec![None; p.n_test()],
        used: vec![false; p.n_gold()],
        best,
        best_mapping: incumbent,
    };
    s.dfs(0);
    (s.best, s.best_mapping)
}

impl Search<'_> {
    /// Score of the decided part plus an optimistic estimate for the rest.
    fn bound(&self, depth: usize) -> u32 {
        let p = self.p;
        let decided = &self.order[..depth];
        let is_decided = |t: usize| decided.contains(&t);
        let mut total = 0;
        for &t in decided {
            if let Some(g) = self.mapping[t] {
                total += p.unary[t][g];
            }
        }
        for &t in &self.order[depth..] {
            total += (0..p.n_gold())
                .filter(|&g| !self.used[g])
                .map(|g| p.unary[t][g])
                .max()
                .unwrap_or(0);
        }
        for (k, r) in p.rels.iter().enumerate() {
            let (da, db) = (is_decided(r.a), is_decided(r.b));
            total += match (da, db) {
                (true, true) => p.rel_match(k, &self.mapping),
                (true, false) | (false, true) => {
                    let (fixed, src_side) = if da { (r.a, true) } else { (r.b, false) };
                    match self.mapping[fixed] {
                        None => 0,
                        Some(g) => r
                            .cands
                            .iter()
                            .filter(|c| if src_side { c.0 == g } else { c.1 == g })
                            .filter(|c| {
                                let other = if src_side { c.1 } else { c.0 };
                                other == g || !self.used[other]
                            })
                            .map(|c| c.2)
                            .max()
                            .unwrap_or(0),
                    }
                }
                (false, false) => r
                    .cands
                    .iter()
                    .filter(|c| !self.used[c.0] && !self.used[c.1])
                    .map(|c| c.2)
                    .max()
                    .unwrap_or(0),
            };
        }
        total
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.order.len() {
            let score = self.p.score(&self.mapping);
            if score > self.best {
                self.best = score;
                self.best_mapping = self.mapping.clone();
            }
            return;
        }
        if self.bound(depth) <= self.best {
            return;
        }
        let t = self.order[depth];
        let mut cands: Vec<usize> = (0..self.p.n_gold()).filter(|&g| !self.used[g]).collect();
        cands.sort_by_key(|&g| (std::cmp::Reverse(self.p.unary[t][g]), g));
        for g in cands {
            self.used[g] = true;
            self.mapping[t] = Some(g);
            self.dfs(depth + 1);
            self.used[g] = false;
            self.mapping[t] = None;
        }
        self.dfs(depth + 1);
    }
}
