mod common;

use common::*;
use geodom::exactnum::Rat;
use geodom::graphs::{
    graph_equal, solve_min_connected_dominating_set, solve_min_dominating_set, solve_min_weight_dominating_set,
    solve_steiner_tree, GraphCompare, GraphJson, LabeledGraph, SteinerOutcome,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = (LabeledGraph, u64)> {
    (1..=max_n, 0.0f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| {
        let mut r = rng(seed);
        (random_graph(n, p, &mut r), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ds_matches_enumeration_with_valid_witness((g, _) in graph(12)) {
        let s = solve_min_dominating_set(&g, None);
        let w = s.witness().unwrap();
        prop_assert!(g.is_dominating(w));
        prop_assert_eq!(w.len(), *s.optimum().unwrap());
        prop_assert_eq!(*s.optimum().unwrap(), brute_ds(&g));
    }

    #[test]
    fn wds_matches_enumeration_with_valid_witness((g, seed) in graph(11)) {
        let g = reweight(&g, &mut rng(seed ^ 1));
        let s = solve_min_weight_dominating_set(&g, None);
        prop_assert_eq!(s.optimum().cloned(), brute_wds(&g));
        if let Some(w) = s.witness() {
            prop_assert!(g.is_dominating(w));
            prop_assert!(w.iter().all(|&v| !g.weight(v).is_infinite()));
            prop_assert_eq!(g.total_weight(w), s.optimum().cloned());
        }
    }

    #[test]
    fn cds_matches_enumeration_with_valid_witness((g, _) in graph(11)) {
        let s = solve_min_connected_dominating_set(&g, None);
        prop_assert_eq!(s.optimum().copied(), brute_cds(&g));
        if let Some(w) = s.witness() {
            prop_assert!(g.is_dominating(w) && g.induces_connected(w));
        }
    }

    #[test]
    fn budgets_decide_feasibility((g, _) in graph(10), k in 0usize..6) {
        let opt = brute_ds(&g);
        prop_assert_eq!(solve_min_dominating_set(&g, Some(k)).is_feasible(), opt <= k);
        let kr = Rat::from_int(k as i64);
        prop_assert_eq!(
            solve_min_weight_dominating_set(&g, Some(&kr)).is_feasible(),
            Rat::from_int(opt as i64) <= kr
        );
    }

    #[test]
    fn adding_an_edge_never_raises_ds((g, seed) in graph(12)) {
        let n = g.num_vertices();
        prop_assume!(n >= 2);
        let mut r = rng(seed ^ 2);
        let (u, v) = loop {
            let u = rand::Rng::random_range(&mut r, 0..n);
            let v = rand::Rng::random_range(&mut r, 0..n);
            if u != v { break (u, v); }
        };
        let before = *solve_min_dominating_set(&g, None).optimum().unwrap();
        let mut h = g.clone();
        if !h.has_edge(u, v) {
            h.add_edge(u, v).unwrap();
        }
        prop_assert!(*solve_min_dominating_set(&h, None).optimum().unwrap() <= before);
    }

    #[test]
    fn steiner_matches_enumeration((g, seed) in graph(11)) {
        let n = g.num_vertices();
        let mut r = rng(seed ^ 3);
        let mut terminals: Vec<usize> = (0..n).filter(|_| rand::Rng::random_bool(&mut r, 0.4)).collect();
        if terminals.is_empty() {
            terminals.push(0);
        }
        let best = brute_steiner(&g, &terminals);
        for k in 0..=n {
            let out = solve_steiner_tree(&g, &terminals, k).unwrap();
            prop_assert_eq!(out.is_feasible(), best.is_some_and(|b| b <= k));
            if let SteinerOutcome::Feasible(w) = out {
                let all: Vec<usize> = terminals.iter().chain(&w).copied().collect();
                prop_assert!(g.induces_connected(&all));
                prop_assert_eq!(Some(w.len()), best);
            }
        }
    }

    #[test]
    fn json_roundtrip((g, seed) in graph(12)) {
        let g = reweight(&g, &mut rng(seed));
        let text = serde_json::to_string(&g.to_json()).unwrap();
        let j: GraphJson = serde_json::from_str(&text).unwrap();
        let back = LabeledGraph::from_json(&j).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph_equal(&g, &back).unwrap(), GraphCompare::Equal);
    }
}

#[test]
fn steiner_needs_terminals() {
    let g = random_graph(3, 1.0, &mut rng(0));
    assert!(solve_steiner_tree(&g, &[], 1).is_err());
}
