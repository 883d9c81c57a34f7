//! Smatch scorers against a brute-force count over every injective mapping.

use std::collections::HashMap;

use amrkit::smatch::{match_exact, match_hill, SmatchScore};
use amrkit::synth::{random_graph, GraphShape};
use amrkit::triples::{to_triples, Triple, TripleSet};
use amrkit::{parse_penman, smatch_exact, AmrGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vars(set: &TripleSet) -> Vec<String> {
    let mut v: Vec<String> = set
        .iter()
        .flat_map(|t| t.vars())
        .map(String::from)
        .collect();
    v.sort();
    v.dedup();
    v
}

fn rename(t: &Triple, map: &HashMap<&str, &str>) -> Triple {
    let r = |v: &str| {
        map.get(v)
            .map_or_else(|| format!("\u{1}{v}"), |g| g.to_string())
    };
    match t {
        Triple::Top { var, concept } => Triple::Top {
            var: r(var),
            concept: concept.clone(),
        },
        Triple::Instance { var, concept } => Triple::Instance {
            var: r(var),
            concept: concept.clone(),
        },
        Triple::Attribute {
            var,
            relation,
            value,
        } => Triple::Attribute {
            var: r(var),
            relation: relation.clone(),
            value: value.clone(),
        },
        Triple::Relation {
            source,
            relation,
            target,
        } => Triple::Relation {
            source: r(source),
            relation: relation.clone(),
            target: r(target),
        },
    }
}

/// Multiset intersection of gold with the renamed test triples.
fn count(gold: &TripleSet, test: &TripleSet, map: &HashMap<&str, &str>) -> usize {
    let mut pool: HashMap<Triple, usize> = HashMap::new();
    for t in gold {
        *pool.entry(t.clone()).or_default() += 1;
    }
    let mut matched = 0;
    for t in test {
        if let Some(c) = pool.get_mut(&rename(t, map)) {
            if *c > 0 {
                *c -= 1;
                matched += 1;
            }
        }
    }
    matched
}

fn brute_force(gold: &TripleSet, test: &TripleSet) -> usize {
    fn go<'a>(
        i: usize,
        tv: &'a [String],
        gv: &'a [String],
        used: &mut Vec<bool>,
        map: &mut HashMap<&'a str, &'a str>,
        gold: &TripleSet,
        test: &TripleSet,
    ) -> usize {
        if i == tv.len() {
            return count(gold, test, map);
        }
        let mut best = go(i + 1, tv, gv, used, map, gold, test);
        for (j, g) in gv.iter().enumerate() {
            if !used[j] {
                used[j] = true;
                map.insert(&tv[i], g);
                best = best.max(go(i + 1, tv, gv, used, map, gold, test));
                map.remove(tv[i].as_str());
                used[j] = false;
            }
        }
        best
    }
    let (tv, gv) = (vars(test), vars(gold));
    go(
        0,
        &tv,
        &gv,
        &mut vec![false; gv.len()],
        &mut HashMap::new(),
        gold,
        test,
    )
}

fn pair(seed: u64, max_nodes: usize) -> (AmrGraph, AmrGraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = GraphShape::small(max_nodes);
    (random_graph(&mut rng, shape), random_graph(&mut rng, shape))
}

#[test]
fn exact_equals_brute_force() {
    for seed in 0..150 {
        let (a, b) = pair(seed, 5);
        let (ga, tb) = (to_triples(&a), to_triples(&b));
        let exact = match_exact(&ga, &tb, 8).unwrap();
        assert_eq!(exact.score.matched, brute_force(&ga, &tb), "seed {seed}");
        // The reported mapping attains the reported count.
        let map: HashMap<&str, &str> = exact
            .mapping
            .iter()
            .map(|(t, g)| (t.as_str(), g.as_str()))
            .collect();
        assert_eq!(count(&ga, &tb, &map), exact.score.matched);
    }
}

/// Too many variables for brute force. The identity mapping (c2 unmapped)
/// matches 20 triples. 21 is impossible: matching every gold triple needs
/// both `(m, ARG0, c)` and `(i, ARG1, c)`, whose test counterparts use c2 and
/// c, and an injective mapping cannot send both to `c`.
#[test]
fn split_reentrancy_pair() {
    let gold = to_triples(&parse_penman(amrkit::fixtures::CRK_CAS_PENMAN).unwrap());
    let test = to_triples(&parse_penman(amrkit::fixtures::CRK_CAS_SPLIT_PENMAN).unwrap());
    assert_eq!((gold.len(), test.len()), (21, 22));
    let names = vars(&gold);
    let identity: HashMap<&str, &str> = names.iter().map(|v| (v.as_str(), v.as_str())).collect();
    assert_eq!(count(&gold, &test, &identity), 20);
    // Sending c2 to `c` instead trades one relation for the other.
    let mut swapped = identity.clone();
    swapped.remove("c");
    swapped.insert("c2", "c");
    assert_eq!(count(&gold, &test, &swapped), 20);
    let exact = match_exact(&gold, &test, 10).unwrap().score;
    assert_eq!(exact.matched, 20);
    assert!((exact.f - 40.0 / 43.0).abs() < 1e-9);
}

#[test]
fn hill_never_beats_exact_and_usually_ties() {
    let mut ties = 0;
    for seed in 0..200 {
        let (a, b) = pair(1000 + seed, 6);
        let (ga, tb) = (to_triples(&a), to_triples(&b));
        let exact = match_exact(&ga, &tb, 8).unwrap().score.matched;
        let hill = match_hill(&ga, &tb, 4, 9, seed).score.matched;
        assert!(hill <= exact);
        ties += usize::from(hill == exact);
    }
    assert!(ties >= 190, "{ties}/200");
}

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = AmrGraph> {
    any::<u64>().prop_map(move |s| {
        random_graph(
            &mut ChaCha8Rng::seed_from_u64(s),
            GraphShape::small(max_nodes),
        )
    })
}

fn unlabel(set: &TripleSet) -> TripleSet {
    set.map(|t| match t {
        Triple::Relation { source, target, .. } => Triple::Relation {
            source: source.clone(),
            relation: "rel".into(),
            target: target.clone(),
        },
        other => other.clone(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_is_symmetric(a in graph_strategy(5), b in graph_strategy(5)) {
        let ab = smatch_exact(&a, &b, 8).unwrap();
        let ba = smatch_exact(&b, &a, 8).unwrap();
        prop_assert_eq!(ab.matched, ba.matched);
        prop_assert_eq!(ab.precision, ba.recall);
        prop_assert!((ab.f - ba.f).abs() < 1e-12);
    }

    #[test]
    fn f_bounds_and_identity(a in graph_strategy(6), b in graph_strategy(6)) {
        let s = smatch_exact(&a, &b, 8).unwrap();
        prop_assert!((0.0..=1.0).contains(&s.f));
        prop_assert!(s.matched <= s.gold_total.min(s.test_total));
        prop_assert_eq!(smatch_exact(&a, &a, 8).unwrap().f, 1.0);
    }

    #[test]
    fn dropping_unmatched_triples_never_lowers_f(a in graph_strategy(5), b in graph_strategy(5)) {
        let (ga, tb) = (to_triples(&a), to_triples(&b));
        let m = match_exact(&ga, &tb, 8).unwrap();
        let map: HashMap<&str, &str> =
            m.mapping.iter().map(|(t, g)| (t.as_str(), g.as_str())).collect();
        let gold: std::collections::HashSet<Triple> = ga.iter().cloned().collect();
        // Triples matched under the optimal mapping stay; one other is removed.
        if let Some(drop) = tb.iter().position(|t| !gold.contains(&rename(t, &map))) {
            let rest = TripleSet::new(
                tb.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, t)| t.clone()).collect(),
            );
            let after = match_exact(&ga, &rest, 8).unwrap().score;
            prop_assert!(after.f >= m.score.f - 1e-12);
        }
    }

    #[test]
    fn unlabeled_at_least_labeled(a in graph_strategy(5), b in graph_strategy(5)) {
        let (ga, tb) = (to_triples(&a), to_triples(&b));
        let labeled = match_exact(&ga, &tb, 8).unwrap().score.f;
        let unlabeled = match_exact(&unlabel(&ga), &unlabel(&tb), 8).unwrap().score.f;
        prop_assert!(unlabeled >= labeled);
    }

    #[test]
    fn hill_at_most_exact(a in graph_strategy(6), b in graph_strategy(6), seed in any::<u64>()) {
        let (ga, tb) = (to_triples(&a), to_triples(&b));
        let exact = match_exact(&ga, &tb, 8).unwrap().score;
        let hill: SmatchScore = match_hill(&ga, &tb, 4, seed, 0).score;
        prop_assert!(hill.matched <= exact.matched);
    }
}
