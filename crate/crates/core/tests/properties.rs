mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use signrank::assignment::EdgeAssignment;
use signrank::detpoly::{det_poly, reduce_squares};
use signrank::flow::{find_zero_sum_flow, verify_flow};
use signrank::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use signrank::linalg::{adjacency_matrix, kills_all_ones, weighted_matrix, IntMatrix};
use signrank::signs::{max_rank_over_signs, min_rank_over_signs};
use signrank::Graph;

use common::{det_expansion, permanent_expansion};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn signed_graph(max_n: usize) -> impl Strategy<Value = (Graph, Vec<i64>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let m = g.m();
        (
            Just(g),
            proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], m),
        )
    })
}

fn matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(lo..=hi, n), n)
}

/// Rank as the largest order of a nonzero minor.
fn rank_by_minors(a: &[Vec<i64>]) -> usize {
    let n = a.len();
    let mut best = 0;
    for rows in 1u32..(1 << n) {
        for cols in 1u32..(1 << n) {
            let k = rows.count_ones();
            if k != cols.count_ones() || (k as usize) <= best {
                continue;
            }
            let r: Vec<usize> = (0..n).filter(|i| rows >> i & 1 == 1).collect();
            let c: Vec<usize> = (0..n).filter(|j| cols >> j & 1 == 1).collect();
            let sub: Vec<Vec<i64>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| a[i][j]).collect())
                .collect();
            if det_expansion(&sub) != 0 {
                best = k as usize;
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(8)) {
        let back = parse_graph6(&to_graph6(&g)).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(8)) {
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn det_matches_expansion(a in matrix(6, -9, 9)) {
        let m = IntMatrix::from_rows(&a);
        prop_assert_eq!(m.det().unwrap(), BigInt::from(det_expansion(&a)));
    }

    #[test]
    fn permanent_matches_expansion(a in matrix(5, -4, 4)) {
        let m = IntMatrix::from_rows(&a);
        prop_assert_eq!(m.permanent().unwrap(), BigInt::from(permanent_expansion(&a)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_matches_minors(a in matrix(5, -3, 3)) {
        prop_assert_eq!(IntMatrix::from_rows(&a).rank(), rank_by_minors(&a));
    }

    #[test]
    fn switching_preserves_rank((g, signs) in signed_graph(7), v in 0usize..7) {
        prop_assume!(g.n() > 0);
        let v = v % g.n();
        let s = EdgeAssignment::signs(signs).unwrap();
        let t = s.switch_at(&g, v);
        let (a, b) = (adjacency_matrix(&g, &s).unwrap(), adjacency_matrix(&g, &t).unwrap());
        prop_assert_eq!(a.rank(), b.rank());
        prop_assert_eq!(a.det().unwrap(), b.det().unwrap());
    }

    #[test]
    fn polynomial_is_homogeneous((g, w) in signed_graph(6), lambda in 2i64..5) {
        let p = det_poly(&g).unwrap();
        prop_assert!(p.is_homogeneous(g.n()));
        let scaled: Vec<i64> = w.iter().map(|x| x * lambda).collect();
        let lhs = p.evaluate(&scaled).unwrap();
        let rhs = p.evaluate(&w).unwrap() * BigInt::from(lambda).pow(g.n() as u32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_reduction_agrees_on_signs((g, s) in signed_graph(6)) {
        let p = det_poly(&g).unwrap();
        let bar = reduce_squares(&p).unwrap();
        prop_assert_eq!(bar.evaluate(&s).unwrap(), p.evaluate(&s).unwrap());
        prop_assert_eq!(bar.evaluate(&s).unwrap(), weighted_matrix(&g, &s).det().unwrap());
    }

    #[test]
    fn sign_ranks_are_ordered(g in graph_strategy(5)) {
        let (lo, witness) = min_rank_over_signs(&g, 20).unwrap();
        let hi = max_rank_over_signs(&g, 20).unwrap();
        prop_assert!(lo <= hi && hi <= g.n());
        prop_assert_eq!(adjacency_matrix(&g, &witness).unwrap().rank(), lo);
    }

    #[test]
    fn returned_flows_are_sound(g in graph_strategy(7), k in 2u32..6) {
        if let Some(f) = find_zero_sum_flow(&g, k).unwrap() {
            prop_assert!(verify_flow(&g, &f).unwrap());
            prop_assert!(f.max_abs() < u64::from(k));
            prop_assert!(kills_all_ones(&weighted_matrix(&g, f.values())));
        }
    }
}
