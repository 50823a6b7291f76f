use std::collections::BTreeSet;

use conndel::catalog::canonical_form;
use conndel::graph::{
    contract_sequence, is_biconnected, is_connected, is_strongly_connected, local_connectivity, max_flow, Digraph,
    UndirectedGraph,
};
use conndel::io::{parse_digraph, parse_weighted_graph, write_digraph, write_weighted_graph, WeightedGraph};
use conndel::kernel::{kernelize, KernelConfig, TrivialProvider};
use conndel::oracles::{oracle_wbd, OracleBudget};
use conndel::wbd::{solve, SolverConfig, WbdInstance};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = UndirectedGraph::new(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut d = Digraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && bits[u * n + v] {
                        d.add_arc(u, v).unwrap();
                    }
                }
            }
            d
        })
    })
}

fn biconnected_strategy(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    graph_strategy(max_n).prop_filter("biconnected", is_biconnected)
}

/// Biconnected by definition: connected, and no single vertex disconnects it.
fn brute_biconnected(g: &UndirectedGraph) -> bool {
    if g.vertex_count() < 2 || !is_connected(g) {
        return false;
    }
    g.vertex_count() == 2 || g.vertices().all(|v| is_connected(&g.without_vertex(v)))
}

/// Smallest vertex set avoiding x and y whose removal separates them, in
/// the graph without a direct x-y edge.
fn brute_separator(g: &UndirectedGraph, x: usize, y: usize) -> usize {
    let direct = g.edge_between(x, y);
    let h = match direct {
        Some(e) => g.without_edge(e),
        None => g.clone(),
    };
    let others: Vec<usize> = h.vertices().filter(|&v| v != x && v != y).collect();
    let mut best = others.len();
    for mask in 0u32..(1 << others.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut cut = h.clone();
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cut.remove_vertex(v).unwrap();
            }
        }
        let seen = conndel::graph::reachable(&cut, x, |_| true, |_| true);
        if !seen[y] {
            best = size;
        }
    }
    best + usize::from(direct.is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn biconnectivity_matches_definition(g in graph_strategy(8)) {
        prop_assert_eq!(is_biconnected(&g), brute_biconnected(&g));
    }

    #[test]
    fn flow_value_matches_smallest_separator(g in graph_strategy(7), x in 0usize..7, y in 0usize..7) {
        let n = g.vertex_count();
        let (x, y) = (x % n, y % n);
        prop_assume!(x != y);
        let flow = max_flow(&g, x, y).unwrap();
        prop_assert_eq!(flow.value(), brute_separator(&g, x, y));
        prop_assert_eq!(local_connectivity(&g, x, y, 2), flow.value().min(2));
        let mut inner = BTreeSet::new();
        for p in &flow.paths {
            let vs = p.vertices();
            prop_assert_eq!(vs.first(), Some(&x));
            prop_assert_eq!(vs.last(), Some(&y));
            for w in vs.windows(2) {
                prop_assert!(g.edge_between(w[0], w[1]).is_some());
            }
            for &v in &vs[1..vs.len() - 1] {
                prop_assert!(inner.insert(v), "vertex {} shared by two paths", v);
            }
        }
    }

    #[test]
    fn contraction_order_is_irrelevant(d in digraph_strategy(6), seed in any::<u64>()) {
        let arcs: Vec<usize> = d.arcs().map(|(a, _, _)| a).collect();
        prop_assume!(!arcs.is_empty());
        // Pairwise vertex-disjoint arcs, picked greedily from a rotated list.
        let start = (seed as usize) % arcs.len();
        let mut used = BTreeSet::new();
        let mut chosen = Vec::new();
        for &a in arcs[start..].iter().chain(&arcs[..start]) {
            let (u, v) = d.arc(a).unwrap();
            if !used.contains(&u) && !used.contains(&v) {
                used.insert(u);
                used.insert(v);
                chosen.push(a);
            }
        }
        let (first, _) = contract_sequence(&d, &chosen).unwrap();
        let mut reversed = chosen.clone();
        reversed.reverse();
        let (second, _) = contract_sequence(&d, &reversed).unwrap();
        let ids = |d: &Digraph| d.arcs().map(|(a, _, _)| a).collect::<BTreeSet<_>>();
        prop_assert_eq!(ids(&first), ids(&second));
        prop_assert_eq!(is_strongly_connected(&first), is_strongly_connected(&second));
        prop_assert_eq!(first.vertex_count(), second.vertex_count());
    }

    #[test]
    fn best_weight_grows_with_budget(g in biconnected_strategy(6), weights in prop::collection::vec(0u8..4, 15)) {
        let w: Vec<f64> = (0..g.edge_bound()).map(|e| weights[e % weights.len()] as f64).collect();
        let mut last = 0.0;
        for k in 0..=3 {
            let inst = WbdInstance::new(g.clone(), w.clone(), k, 0.0, BTreeSet::new()).unwrap();
            let oracle = oracle_wbd(&inst, &OracleBudget::default()).unwrap().unwrap();
            let solved = solve(&inst, &SolverConfig::default()).unwrap();
            prop_assert!((oracle.weight - solved.best.weight).abs() < 1e-9);
            prop_assert!(oracle.weight + 1e-9 >= last);
            last = oracle.weight;
        }
    }

    #[test]
    fn text_formats_round_trip(g in graph_strategy(8), d in digraph_strategy(6), frozen_mod in 2usize..5) {
        let mut wg = WeightedGraph::unit(g);
        let ids: Vec<usize> = wg.graph.edge_ids().collect();
        for &e in &ids {
            wg.weights[e] = (e % 7) as f64 * 0.5;
            if e % frozen_mod == 0 {
                wg.frozen.insert(e);
            }
        }
        let back = parse_weighted_graph(&write_weighted_graph(&wg)).unwrap();
        prop_assert_eq!(back, wg);
        let labels = vec![None; d.vertex_bound()];
        let dback = parse_digraph(&write_digraph(&d, &labels)).unwrap();
        let arcs = |d: &Digraph| d.arcs().collect::<Vec<_>>();
        prop_assert_eq!(arcs(&dback), arcs(&d));
    }

    #[test]
    fn kernelize_is_idempotent(g in biconnected_strategy(7), k in 0usize..3) {
        let inst = WbdInstance::unweighted(g, k, BTreeSet::new()).unwrap();
        let config = KernelConfig::default();
        let once = kernelize(&inst, &TrivialProvider, &config).unwrap();
        let twice = kernelize(&once.instance, &TrivialProvider, &config).unwrap();
        prop_assert_eq!(canonical_form(&once.instance.graph), canonical_form(&twice.instance.graph));
        prop_assert_eq!(once.instance.k, twice.instance.k);
        prop_assert_eq!(once.instance.potential().len(), twice.instance.potential().len());
        let expect = oracle_wbd(&inst, &OracleBudget::default()).unwrap().is_some();
        let got = oracle_wbd(&once.instance, &OracleBudget::default()).unwrap().is_some();
        prop_assert_eq!(expect, got);
    }
}
