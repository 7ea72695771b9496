//! Property tests for the graph substrate and the interval/trapezoid
//! predicates.

use proptest::prelude::*;

use trapiso::graph::Graph;
use trapiso::realizer::{Interval, IntervalRepresentation};
use trapiso::trapezoid::{trapezoids_intersect, Trapezoid};

/// Graphs on up to 8 vertices, encoded as an edge-presence mask over the
/// pairs `(u, v)` with `u < v`.
fn small_graph() -> impl Strategy<Value = Graph> {
    (0usize..=8).prop_flat_map(|n| {
        let pair_count = n * n.saturating_sub(1) / 2;
        proptest::bits::u32::masked(((1u64 << pair_count) - 1) as u32).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut bit = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if mask & (1 << bit) != 0 {
                        edges.push((u, v));
                    }
                    bit += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn interval() -> impl Strategy<Value = Interval> {
    (-10i64..=10, 0i64..=10).prop_map(|(lo, len)| Interval::new(lo, lo + len))
}

fn trapezoid() -> impl Strategy<Value = Trapezoid> {
    (interval(), interval()).prop_map(|(top, bottom)| Trapezoid::new(top, bottom))
}

/// Exhaustive 2-coloring search: the independent ground truth for
/// bipartiteness on small graphs.
fn two_colorable_by_enumeration(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0u32..(1 << n)).any(|mask| {
        g.edges()
            .all(|(u, v)| (mask >> u) & 1 != (mask >> v) & 1)
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in small_graph()) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_edge_counts_partition_all_pairs(g in small_graph()) {
        let n = g.vertex_count();
        prop_assert_eq!(
            g.edge_count() + g.complement().edge_count(),
            n * n.saturating_sub(1) / 2
        );
    }

    #[test]
    fn bipartition_agrees_with_exhaustive_two_coloring(g in small_graph()) {
        match g.bipartition() {
            Ok(split) => {
                prop_assert!(two_colorable_by_enumeration(&g));
                // The returned sides really are a 2-coloring.
                for (u, v) in g.edges() {
                    prop_assert_ne!(
                        split.side_a().contains(&u),
                        split.side_a().contains(&v)
                    );
                }
            }
            Err(odd) => {
                prop_assert!(!two_colorable_by_enumeration(&g));
                prop_assert_eq!(odd.cycle.len() % 2, 1);
                for (i, &u) in odd.cycle.iter().enumerate() {
                    let v = odd.cycle[(i + 1) % odd.cycle.len()];
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn edge_list_roundtrips(g in small_graph()) {
        let parsed = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert!(parsed.same_edge_set(&g));
    }

    #[test]
    fn trapezoid_intersection_is_reflexive_and_symmetric(
        t1 in trapezoid(),
        t2 in trapezoid(),
    ) {
        prop_assert!(trapezoids_intersect(&t1, &t1));
        prop_assert_eq!(
            trapezoids_intersect(&t1, &t2),
            trapezoids_intersect(&t2, &t1)
        );
    }

    #[test]
    fn interval_orders_always_satisfy_the_axioms(
        intervals in proptest::collection::vec(interval(), 0..8),
    ) {
        let rep = IntervalRepresentation::new(1, intervals);
        prop_assert!(rep.interval_order_relation().verify_axioms().is_clean());
    }
}
