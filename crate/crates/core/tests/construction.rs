mod common;

use common::{complete, cycle, gnp, path, relabel, star};
use proptest::prelude::*;
use sumdist_core::coloring::{
    availability_audit, choose_target, run_algorithm, AvailabilityCase, ColoringState, Params,
    RunOptions,
};
use sumdist_core::exact::{is_colorable, min_strength, DEFAULT_NODE_CAP};
use sumdist_core::graph::BallScanner;
use sumdist_core::ordering::{backward_stats, RandomOrdering};
use sumdist_core::verify::{check_palette, find_conflicts, verify, weights, PaletteCaps};
use sumdist_core::{DegreePartition, Graph, TotalColoring};

fn checked() -> RunOptions {
    RunOptions { check_invariants: true, ..RunOptions::default() }
}

fn assert_valid(g: &Graph, r: u32, seed: u64, opts: &RunOptions) -> sumdist_core::coloring::RunOutput {
    let out = run_algorithm(g, r, seed, opts).unwrap();
    let report = verify(g, &out.coloring, r, (&out.params_used).into()).unwrap();
    assert!(report.valid, "invalid colouring: {report:?}");
    out
}

#[test]
fn k2_two_distinct_weights() {
    let g = complete(2);
    let out = assert_valid(&g, 2, 0, &checked());
    let w = weights(&g, &out.coloring).unwrap();
    assert_ne!(w[0], w[1]);
    assert_eq!(out.escalations, 0);
}

#[test]
fn p3_within_palette() {
    let g = path(3);
    for seed in 0..20 {
        let out = assert_valid(&g, 2, seed, &checked());
        assert_eq!(out.params_used, Params::derive(2, 2).unwrap());
        assert!(out.max_color() <= 8);
        let mut w = weights(&g, &out.coloring).unwrap();
        w.sort_unstable();
        w.dedup();
        assert_eq!(w.len(), 3);
        assert!(check_palette(&out.coloring, (&out.params_used).into()).ok);
    }
}

#[test]
fn edgeless_graph_all_ones() {
    let g = Graph::new(5, &[]).unwrap();
    let out = assert_valid(&g, 3, 1, &checked());
    assert_eq!(weights(&g, &out.coloring).unwrap(), vec![1; 5]);
}

#[test]
fn radius_one_rejected() {
    assert!(run_algorithm(&path(3), 1, 0, &RunOptions::default()).is_err());
}

#[test]
fn disconnected_graph_with_isolated_vertices() {
    let g = Graph::new(9, &[(0, 1), (1, 2), (2, 0), (4, 5), (5, 6), (6, 7)]).unwrap();
    for seed in 0..10 {
        assert_valid(&g, 2, seed, &checked());
    }
}

/// Steps through the construction by hand and checks the per-step
/// invariants that `run_algorithm` relies on.
#[test]
fn manual_steps_keep_targets_and_slack() {
    let g = gnp(60, 0.15, 4);
    let r = 2;
    let p = Params::derive(g.max_degree(), r).unwrap();
    let part = DegreePartition::new(&g);
    let ord = RandomOrdering::sample(&g, 4).unwrap();
    let mut state = ColoringState::new(&g, &p);
    let mut scanner = BallScanner::new(g.vertex_count());
    let mut fixed: Vec<(usize, i64)> = Vec::new();
    for &v in ord.perm() {
        let feasible = state.feasible_sum_interval(&g, &p, &part, v);
        let forbidden: Vec<i64> =
            scanner.scan(&g, v, r).iter().filter_map(|&u| state.target(u)).collect();
        let target = choose_target(feasible, &forbidden).expect("no escalation expected here");
        let before = state.weight(v);
        let applied = state.apply_target(&g, &p, &part, v, target).unwrap();
        assert_eq!(applied, target - before);
        assert_eq!(state.slack(v), Some(0));
        fixed.push((v, target));
        for &(u, t) in &fixed {
            assert_eq!(state.target(u), Some(t));
            let w = state.weight(u);
            assert!(t - p.big_step as i64 <= w && w <= t);
        }
        state.check_invariants(&g, &p).unwrap();
    }
    let (vc, ec) = state.finalize();
    let c = TotalColoring::new(
        vc.into_iter().map(|x| x as u64).collect(),
        ec.into_iter().map(|x| x as u64).collect(),
    );
    assert!(verify(&g, &c, r, (&p).into()).unwrap().valid);
}

#[test]
fn audit_examples() {
    // Vertex 0 has two small neighbours (1, 2) and one big neighbour (3);
    // vertex 3 has degree 7 = Δ. Vertex 11 is isolated.
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    edges.extend((4..10).map(|i| (3, i)));
    let g = Graph::new(12, &edges).unwrap();
    assert_eq!(g.max_degree(), 7);
    let p = Params::with_small_step(7, 2, 3).unwrap();
    assert_eq!(p.big_step, 10);
    let part = DegreePartition::new(&g);
    assert!(part.is_small(0) && part.is_big(3));
    assert_eq!((part.small_neighbors(0), part.big_neighbors(0)), (2, 1));

    let mut x = vec![0.5; 12];
    x[0] = 0.01;
    let ord = RandomOrdering::from_variates(&g, x).unwrap();
    let stats = backward_stats(&g, &ord, &part, 2).unwrap();
    let state = ColoringState::new(&g, &p);
    let a = availability_audit(&state, &g, &p, &part, &ord, &stats, 0);
    assert_eq!(a.options, 2 * 3 + 10 + 1);
    assert_eq!(a.backward_r, 0);
    assert_eq!(a.case, AvailabilityCase::Small);

    let a = availability_audit(&state, &g, &p, &part, &ord, &stats, 11);
    assert_eq!((a.options, a.backward_r, a.case), (1, 0, AvailabilityCase::Isolated));

    // Vertex 3 is big with b(3) = 0, so untracked; all edges forward with step k.
    let a = availability_audit(&state, &g, &p, &part, &ord, &stats, 3);
    assert_eq!(a.case, AvailabilityCase::BigUntracked);
    assert!(a.options > 7 * 3);
}

#[test]
fn cached_and_scanned_balls_agree() {
    let g = gnp(120, 0.08, 9);
    let scan = run_algorithm(&g, 3, 5, &RunOptions::default()).unwrap();
    let cache =
        run_algorithm(&g, 3, 5, &RunOptions { cache_balls: true, ..RunOptions::default() }).unwrap();
    assert_eq!(scan, cache);
}

#[test]
fn escalation_doubles_small_step_until_feasible() {
    // With the default k every vertex has more options than backward
    // r-neighbours at these sizes. Starting sparse graphs from k = 1 makes
    // some small vertices run out, which exercises the doubling path.
    let start = RunOptions { initial_small_step: Some(1), ..checked() };
    let mut escalated = 0;
    for seed in 0..40 {
        let g = gnp(60, 0.05, seed);
        let out = run_algorithm(&g, 3, seed, &start).unwrap();
        let report = verify(&g, &out.coloring, 3, (&out.params_used).into()).unwrap();
        assert!(report.valid);
        let expected = Params::with_small_step(g.max_degree().max(2), 3, 1 << out.escalations);
        assert_eq!(out.params_used, expected.unwrap());
        if out.escalations > 0 {
            escalated += 1;
            let strict = RunOptions { escalation_cap: out.escalations - 1, ..start.clone() };
            assert!(matches!(
                run_algorithm(&g, 3, seed, &strict),
                Err(sumdist_core::Error::EscalationCapExceeded { .. })
            ));
        }
    }
    assert!(escalated > 0, "k = 1 never ran out of weights");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algorithm_output_always_verifies(n in 2usize..150, avg in 1.0f64..12.0, seed: u64, r in 2u32..4) {
        let g = gnp(n, (avg / n as f64).min(1.0), seed);
        let out = run_algorithm(&g, r, seed, &checked()).unwrap();
        let report = verify(&g, &out.coloring, r, (&out.params_used).into()).unwrap();
        prop_assert!(report.valid, "{:?}", report);
        prop_assert!(out.max_color() <= out.params_used.palette_cap());
        prop_assert_eq!(run_algorithm(&g, r, seed, &checked()).unwrap(), out);
    }

    #[test]
    fn conflicts_invariant_under_relabeling(n in 2usize..25, p in 0.0f64..0.5, seed: u64, r in 1u32..4,
                                            colors in prop::collection::vec(1u64..4, 0..400)) {
        let g = gnp(n, p, seed);
        let m = g.edge_count();
        let pick = |i: usize| colors.get(i).copied().unwrap_or(1 + (i as u64 % 3));
        let c = TotalColoring::new((0..n).map(pick).collect(), (n..n + m).map(pick).collect());
        let perm: Vec<usize> = (0..n).map(|v| (v * 7 + 3) % n).collect();
        let perm = if is_permutation(&perm) { perm } else { (0..n).rev().collect() };
        let h = relabel(&g, &perm);
        let mut hc = TotalColoring::new(vec![0; n], c.edge.clone());
        for v in 0..n {
            hc.vertex[perm[v]] = c.vertex[v];
        }
        let mut mapped: Vec<(usize, usize)> = find_conflicts(&g, &c, r).unwrap()
            .into_iter()
            .map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        mapped.sort_unstable();
        prop_assert_eq!(find_conflicts(&h, &hc, r).unwrap(), mapped);

        // larger radius only adds pairs
        let wider = find_conflicts(&g, &c, r + 1).unwrap();
        for pair in find_conflicts(&g, &c, r).unwrap() {
            prop_assert!(wider.contains(&pair));
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

fn tiny_suite() -> Vec<(&'static str, Graph)> {
    vec![
        ("K1", Graph::new(1, &[]).unwrap()),
        ("P2", path(2)),
        ("P3", path(3)),
        ("P4", path(4)),
        ("C3", cycle(3)),
        ("C4", cycle(4)),
        ("K_{1,3}", star(3)),
    ]
}

#[test]
fn exact_witnesses_verify_and_palettes_nest() {
    for (name, g) in tiny_suite() {
        for r in 1..=3 {
            let (ts, witness) = min_strength(&g, r, 6, DEFAULT_NODE_CAP).unwrap().unwrap();
            assert!(verify(&g, &witness, r, PaletteCaps::uniform(ts)).unwrap().valid, "{name}");
            if ts > 1 {
                assert_eq!(is_colorable(&g, r, ts - 1, DEFAULT_NODE_CAP).unwrap(), None);
            }
            let wider = is_colorable(&g, r, ts + 1, DEFAULT_NODE_CAP).unwrap().unwrap();
            assert!(find_conflicts(&g, &wider, r).unwrap().is_empty());
            if r < 3 {
                let next = min_strength(&g, r + 1, 6, DEFAULT_NODE_CAP).unwrap().unwrap().0;
                assert!(ts <= next, "{name}: ts_{r} = {ts} > ts_{} = {next}", r + 1);
            }
            if r >= 2 {
                let out = run_algorithm(&g, r, 3, &checked()).unwrap();
                assert!(ts <= out.max_color(), "{name}");
            }
        }
    }
}
