//! Cross-validation properties: each module's fast path against an
//! independent slow formulation.

use proptest::prelude::*;
use squarecheck_core::*;

/// Arbitrary graph on up to `n_max` vertices with edge density `p`.
fn arb_graph(n_max: usize) -> impl Strategy<Value = Graph> {
    (1..=n_max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::build(n, &edges).expect("pairs are simple edges")
        })
    })
}

/// Arbitrary subcubic graph built by dropping edges at saturated vertices.
fn arb_subcubic(n_max: usize) -> impl Strategy<Value = Graph> {
    arb_graph(n_max).prop_map(|g| {
        let n = g.vertex_count();
        let mut deg = vec![0usize; n];
        let mut edges = Vec::new();
        for &(u, v) in g.edges() {
            if deg[u] < 3 && deg[v] < 3 {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).expect("subset of simple edges")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_edges_are_distance_one_or_two(g in arb_graph(12)) {
        let sq = g.square();
        for u in 0..g.vertex_count() {
            let dist = g.distances_from(u);
            for v in 0..g.vertex_count() {
                if u == v {
                    continue;
                }
                let close = dist[v].finite().is_some_and(|d| d <= 2);
                prop_assert_eq!(sq.has_edge(u, v), close, "pair ({}, {})", u, v);
            }
        }
    }

    #[test]
    fn articulation_points_match_deletion_oracle(g in arb_graph(8)) {
        let n = g.vertex_count();
        let fast = g.articulation_points();
        for v in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let slow = if keep.is_empty() {
                false
            } else {
                let before = g.connected_component_count();
                g.induced(&keep).connected_component_count() > before
            };
            prop_assert_eq!(fast.contains(&v), slow, "vertex {}", v);
        }
    }

    #[test]
    fn solver_agrees_with_exhaustive_assignment(
        g in arb_graph(6),
        seed_lists in proptest::collection::vec(proptest::collection::vec(0u32..4, 1..=3), 6),
    ) {
        let n = g.vertex_count();
        let lists = ListAssignment::new(seed_lists[..n].to_vec());
        prop_assume!(lists.is_ok());
        let lists = lists.unwrap();
        let solved = solve_list_coloring(&g, &lists);
        // exhaustive product over all list choices
        let mut any = false;
        let mut choice = vec![0usize; n];
        'outer: loop {
            let coloring = Coloring::total(
                (0..n).map(|v| lists.list(v)[choice[v]]).collect(),
            );
            if check_proper(&g, &coloring, Some(&lists)) {
                any = true;
                break;
            }
            let mut v = 0;
            loop {
                if v == n {
                    break 'outer;
                }
                choice[v] += 1;
                if choice[v] < lists.list(v).len() {
                    break;
                }
                choice[v] = 0;
                v += 1;
            }
        }
        prop_assert_eq!(solved.is_some(), any);
        if let Some(c) = solved {
            prop_assert!(check_proper(&g, &c, Some(&lists)));
        }
    }

    #[test]
    fn face_lengths_sum_to_twice_edges(g in arb_subcubic(9)) {
        prop_assume!(g.is_connected());
        if let Ok(Some(e)) = find_planar_embedding(&g) {
            let total: usize = (0..e.face_count()).map(|f| e.face_len(f)).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
            let ledger = initial_charges(&e).unwrap();
            prop_assert_eq!(ledger.total(), Rational64::from_integer(-12));
            let after = apply_rules(&e, &ledger);
            prop_assert_eq!(after.total(), Rational64::from_integer(-12));
        }
    }

    #[test]
    fn greedy_certificate_implies_choosable(g in arb_graph(5)) {
        let n = g.vertex_count();
        let f = SizeVector::new(
            (0..n).map(|v| g.degree(v).min(2) + 1).collect(),
        ).unwrap();
        if let Some(order) = greedy_order_certificate(&g, &f).unwrap() {
            prop_assert_eq!(order.len(), n);
            let out = is_f_choosable(&g, &f).unwrap();
            prop_assert!(out.is_choosable());
        }
    }

    #[test]
    fn witness_lists_meet_sizes_and_defeat_solver(g in arb_graph(5)) {
        let n = g.vertex_count();
        let f = SizeVector::new(vec![2.min(n); n]).unwrap();
        match is_f_choosable(&g, &f).unwrap() {
            ChooseOutcome::Bad(w) => {
                prop_assert_eq!(w.lists.sizes(), f.sizes().to_vec());
                prop_assert!(solve_list_coloring(&g, &w.lists).is_none());
            }
            ChooseOutcome::Choosable(_) => {}
        }
    }
}

#[test]
fn choosable_matches_naive_on_paths_and_cycles() {
    // spot agreement beyond the exhaustive acceptance sweep
    let cases = [
        (families::path(4), vec![1, 2, 2, 1]),
        (families::path(4), vec![2, 1, 1, 2]),
        (families::cycle(4), vec![2, 2, 2, 2]),
        (families::cycle(4), vec![1, 2, 1, 2]),
        (families::complete(4), vec![2, 2, 2, 2]),
    ];
    for (g, sizes) in cases {
        let f = SizeVector::new(sizes).unwrap();
        let fast = is_f_choosable(&g, &f).unwrap().is_choosable();
        let slow = naive_f_choosable(&g, &f, f.total().min(8))
            .unwrap()
            .is_choosable();
        assert_eq!(fast, slow);
    }
}
