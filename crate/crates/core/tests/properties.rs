use proptest::prelude::*;

use choosability::clustered::{choose_clustered_extension, choose_clustered_mad7_10};
use choosability::defective::{choose_defective, DefectParams};
use choosability::io::{parse_graph, parse_lists, uniform_lists, write_graph, write_lists};
use choosability::local::{descend, is_local_min};
use choosability::oracle::{oracle_colour, oracle_transversal, DEFAULT_CAP};
use choosability::transversal::{independent_transversal, select_stable_set, TransversalInstance};
use choosability::{
    mad, mad_bruteforce, BoundKind, Colouring, Density, Error, Graph, ListAssignment, MonoView,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |pairs| {
            Graph::new(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

fn lists_strategy(n: usize, max_k: usize) -> impl Strategy<Value = ListAssignment> {
    proptest::collection::vec(proptest::collection::btree_set(1u32..=5, 1..=max_k), n).prop_map(
        |sets| {
            ListAssignment::new(sets.into_iter().map(|s| s.into_iter().collect()).collect())
                .unwrap()
        },
    )
}

fn graph_and_lists(max_n: usize, max_k: usize) -> impl Strategy<Value = (Graph, ListAssignment)> {
    graph_strategy(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (Just(g), lists_strategy(n, max_k))
    })
}

/// Disjoint union of paths and cycles on `n` vertices.
fn paths_and_cycles(n: usize, cuts: &[bool], closes: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut start = 0;
    for v in 0..n {
        let last = v + 1 == n || cuts[v];
        if !last {
            edges.push((v, v + 1));
        } else {
            if closes[v] && v >= start + 2 {
                edges.push((start, v));
            }
            start = v + 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_mad_matches_exhaustive(g in graph_strategy(11)) {
        let fast = mad(&g).unwrap();
        prop_assert_eq!(fast.density, mad_bruteforce(&g).unwrap().density);
        prop_assert!(fast.is_consistent(&g));
    }

    #[test]
    fn mad_bounds_every_subgraph_density(g in graph_strategy(14), mask in any::<u16>()) {
        let subset: Vec<usize> = (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
        if !subset.is_empty() {
            prop_assert!(Density::of_subgraph(&g, &subset) <= mad(&g).unwrap().density);
        }
    }

    #[test]
    fn oracle_never_worsens_with_longer_lists((g, lists) in graph_and_lists(8, 2), extra in 6u32..9) {
        let longer = ListAssignment::new(
            lists.lists().iter().map(|l| l.iter().copied().chain([extra]).collect()).collect()
        ).unwrap();
        for kind in [BoundKind::Defect, BoundKind::Clustering] {
            let short = oracle_colour(&g, &lists, kind, DEFAULT_CAP).unwrap();
            let long = oracle_colour(&g, &longer, kind, DEFAULT_CAP).unwrap();
            prop_assert!(long.minimum <= short.minimum);
            prop_assert_eq!(MonoView::new(&g, &short.witness).measured(kind), short.minimum);
        }
    }

    #[test]
    fn oracle_clustering_dominates_defect((g, lists) in graph_and_lists(8, 3)) {
        let defect = oracle_colour(&g, &lists, BoundKind::Defect, DEFAULT_CAP).unwrap().minimum;
        let clustering = oracle_colour(&g, &lists, BoundKind::Clustering, DEFAULT_CAP).unwrap().minimum;
        prop_assert!(clustering > defect);
    }

    #[test]
    fn descent_ends_in_local_min((g, lists) in graph_and_lists(12, 3), seed in any::<u64>()) {
        let start = Colouring(
            (0..g.vertex_count()).map(|v| lists.list(v)[seed as usize % lists.list(v).len()]).collect()
        );
        let mut end = start.clone();
        descend(&g, &lists, &mut end);
        prop_assert!(is_local_min(&g, &lists, &end));
        prop_assert!(end.mono_edge_count(&g) <= start.mono_edge_count(&g));
        prop_assert!(end.is_valid_for(&lists));
    }

    #[test]
    fn defective_meets_bound_or_shows_density(g in graph_strategy(16), k in 1usize..4, d in 0usize..3, seed in any::<u64>()) {
        let lists = uniform_lists(g.vertex_count(), k, k + 1, seed).unwrap();
        let params = DefectParams::new(k, d, 1).unwrap();
        match choose_defective(&g, &lists, params, seed) {
            Ok(sol) => {
                prop_assert!(sol.report.defect <= d);
                prop_assert!(sol.colouring.is_valid_for(&lists));
            }
            Err(Error::DensityViolation { witness, density }) => {
                prop_assert_eq!(Density::of_subgraph(&g, &witness), density);
                prop_assert!(density >= params.density_threshold());
                prop_assert!(mad(&g).unwrap().density >= params.density_threshold());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn clustered_solvers_meet_bound_or_show_density(g in graph_strategy(16), k in 1usize..4, seed in any::<u64>()) {
        let lists = uniform_lists(g.vertex_count(), k, k + 1, seed).unwrap();
        match choose_clustered_mad7_10(&g, &lists, seed) {
            Ok(sol) => prop_assert!(sol.report.clustering <= 9),
            Err(Error::DensityViolation { density, .. }) => {
                prop_assert!(density >= Density::new(10 * k as u64, 7));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
        match choose_clustered_extension(&g, &lists, k, 1, seed) {
            Ok(sol) => prop_assert!(sol.report.clustering <= 57 * k - 51),
            Err(Error::DensityViolation { density, .. }) => {
                prop_assert!(density >= Density::new(3 * k as u64, 2));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn transversal_agrees_with_exhaustive_search(g in graph_strategy(12), sizes in proptest::collection::vec(1usize..4, 1..6)) {
        let n = g.vertex_count();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        for s in sizes {
            if next >= n {
                break;
            }
            let end = (next + s).min(n);
            parts.push((next..end).collect());
            next = end;
        }
        if next < n {
            parts.push((next..n).collect());
        }
        let inst = TransversalInstance::new(g, parts).unwrap();
        let exists = oracle_transversal(&inst, DEFAULT_CAP).unwrap().is_some();
        match independent_transversal(&inst) {
            Ok(sel) => prop_assert!(exists && inst.is_independent_transversal(&sel)),
            Err(Error::NotFound) => prop_assert!(!exists),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn stable_set_selection_properties(
        n in 1usize..90,
        cuts in proptest::collection::vec(proptest::bool::weighted(0.06), 90),
        closes in proptest::collection::vec(any::<bool>(), 90),
        chords in proptest::collection::vec((0usize..90, 0usize..90), 0..60),
        delta in 3usize..7,
    ) {
        let h = paths_and_cycles(n, &cuts, &closes);
        let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
        let mut edges: Vec<(usize, usize)> = h.edges().collect();
        for (u, v) in chords {
            if u < n && v < n && u != v && degree[u] < delta && degree[v] < delta && !h.has_edge(u, v) {
                degree[u] += 1;
                degree[v] += 1;
                edges.push((u, v));
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let (s, plan) = select_stable_set(&g, &h, delta).unwrap();
        prop_assert!(g.is_stable(&s));
        prop_assert!(s.iter().all(|&v| h.degree(v) == 2));
        let mut covered: Vec<usize> = plan.components.iter().flat_map(|c| c.order.iter().copied()).collect();
        covered.sort_unstable();
        prop_assert_eq!(covered, (0..n).collect::<Vec<_>>());

        let in_s = |v: &usize| s.binary_search(v).is_ok();
        let end_one = 3 * delta - 5;
        let end_two = 5 * delta - 8;
        let three = (19 * delta).div_ceil(2) - 16;
        for cp in &plan.components {
            let order = &cp.order;
            let len = order.len();
            let is_cycle = len >= 3 && h.has_edge(order[0], order[len - 1]);
            if !is_cycle {
                for (size, need) in [(end_one, 1), (end_two, 2)] {
                    if len >= size {
                        let head = order[..size].iter().filter(|v| in_s(v)).count();
                        let tail = order[len - size..].iter().filter(|v| in_s(v)).count();
                        prop_assert!(head >= need && tail >= need, "path of {} vertices, end window {}", len, size);
                    }
                }
            }
            if len >= three {
                let windows = if is_cycle && len > three { len } else { len - three + 1 };
                for start in 0..windows {
                    let hits = (0..three).filter(|i| in_s(&order[(start + i) % len])).count();
                    prop_assert!(hits >= 3, "window at {} of a {}-vertex component", start, len);
                }
            }
        }
    }

    #[test]
    fn graph_text_round_trip(g in graph_strategy(20)) {
        let text = write_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn list_text_round_trip((g, lists) in graph_and_lists(10, 4)) {
        prop_assert_eq!(parse_lists(&write_lists(&lists), g.vertex_count()).unwrap(), lists);
    }
}
