//! Seeded random instances: connected bipartite graphs built spanning-tree
//! first, random relabelings, and certified non-isomorphic rewirings.

use rand::Rng;

use crate::graph::{BipartiteGraph, Graph};
use crate::iso::{brute_force_isomorphic, BRUTE_FORCE_CAP};

/// A random connected bipartite graph with sides `0..s` and `s..s+t`.
/// A spanning tree alternating sides is laid down first, then every
/// remaining cross pair is added independently with probability
/// `edge_prob`.
pub fn random_connected_bipartite<R: Rng>(
    rng: &mut R,
    s: usize,
    t: usize,
    edge_prob: f64,
) -> BipartiteGraph {
    assert!(s >= 1 && t >= 1, "both sides must be non-empty");
    assert!((0.0..=1.0).contains(&edge_prob));
    let side_a: Vec<usize> = (0..s).collect();
    let side_b: Vec<usize> = (s..s + t).collect();

    let mut connected_a = vec![side_a[0]];
    let mut connected_b: Vec<usize> = Vec::new();
    let mut remaining_a: Vec<usize> = side_a[1..].to_vec();
    let mut remaining_b: Vec<usize> = side_b.clone();
    let mut edges = Vec::new();

    while !remaining_a.is_empty() || !remaining_b.is_empty() {
        // A vertex can only attach across sides, so the first attachment is
        // forced to side B.
        let attach_b = if connected_b.is_empty() || remaining_a.is_empty() {
            true
        } else if remaining_b.is_empty() {
            false
        } else {
            rng.random_bool(0.5)
        };
        if attach_b {
            let v = remaining_b.swap_remove(rng.random_range(0..remaining_b.len()));
            let partner = connected_a[rng.random_range(0..connected_a.len())];
            edges.push((partner, v));
            connected_b.push(v);
        } else {
            let v = remaining_a.swap_remove(rng.random_range(0..remaining_a.len()));
            let partner = connected_b[rng.random_range(0..connected_b.len())];
            edges.push((v, partner));
            connected_a.push(v);
        }
    }

    let mut tree = vec![false; s * t];
    for &(a, b) in &edges {
        tree[a * t + (b - s)] = true;
    }
    for a in 0..s {
        for b in s..s + t {
            if !tree[a * t + (b - s)] && rng.random_bool(edge_prob) {
                edges.push((a, b));
            }
        }
    }

    let graph = Graph::from_edges(s + t, edges).expect("generator emits valid cross edges");
    BipartiteGraph::new(graph, side_a, side_b).expect("generator emits a valid bipartition")
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// A copy of `g` with vertices renamed by a random permutation.
pub fn relabel<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let perm = random_permutation(rng, g.vertex_count());
    Graph::from_edges(g.vertex_count(), g.edges().map(|(u, v)| (perm[u], perm[v])))
        .expect("permuting a simple graph keeps it simple")
}

/// Moves one cross edge of `g` to a currently absent cross pair, keeping the
/// graph connected on the same sides, and certifies the result
/// non-isomorphic to `g`: by the exhaustive oracle when the graph is within
/// its cap, by a degree-sequence mismatch otherwise. Returns `None` when no
/// certified mutant is found within `attempts` tries (for instance on a
/// complete bipartite graph, which has no absent cross pair).
pub fn rewire_nonisomorphic<R: Rng>(
    rng: &mut R,
    g: &BipartiteGraph,
    attempts: usize,
) -> Option<BipartiteGraph> {
    let s = g.side_a().len();
    let t = g.side_b().len();
    let present: Vec<(usize, usize)> = g.graph().edges().collect();
    let absent: Vec<(usize, usize)> = g
        .side_a()
        .iter()
        .flat_map(|&a| g.side_b().iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !g.graph().has_edge(a, b))
        .collect();
    if absent.is_empty() || present.is_empty() {
        return None;
    }

    for _ in 0..attempts {
        let drop = present[rng.random_range(0..present.len())];
        let add = absent[rng.random_range(0..absent.len())];
        let edges = g
            .graph()
            .edges()
            .filter(|&e| e != drop)
            .chain(std::iter::once(add));
        let candidate = Graph::from_edges(s + t, edges).expect("cross pairs stay valid");
        if !candidate.is_connected() {
            continue;
        }
        let certified = if candidate.vertex_count() <= BRUTE_FORCE_CAP {
            !brute_force_isomorphic(g.graph(), &candidate)
                .expect("within oracle cap")
                .is_isomorphic()
        } else {
            candidate.degree_sequence() != g.graph().degree_sequence()
        };
        if certified {
            let mutant = BipartiteGraph::new(candidate, g.side_a().to_vec(), g.side_b().to_vec())
                .expect("rewiring keeps edges across the sides");
            return Some(mutant);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_are_connected_bipartite() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let s = rng.random_range(3..=6);
            let t = rng.random_range(3..=6);
            let g = random_connected_bipartite(&mut rng, s, t, 0.4);
            assert!(g.graph().is_connected());
            assert_eq!(g.side_a().len(), s);
            assert_eq!(g.side_b().len(), t);
            // Spanning tree plus extras: at least n - 1 edges.
            assert!(g.graph().edge_count() >= s + t - 1);
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let build = || {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            random_connected_bipartite(&mut rng, 4, 5, 0.5)
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn zero_probability_yields_a_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_connected_bipartite(&mut rng, 4, 4, 0.0);
        assert_eq!(g.graph().edge_count(), 7);
        assert!(g.graph().is_connected());
    }

    #[test]
    fn relabeled_graph_is_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_connected_bipartite(&mut rng, 3, 4, 0.5);
        let h = relabel(&mut rng, g.graph());
        assert!(brute_force_isomorphic(g.graph(), &h).unwrap().is_isomorphic());
    }

    #[test]
    fn rewired_mutants_are_certified_non_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut produced = 0;
        for _ in 0..30 {
            let g = random_connected_bipartite(&mut rng, 3, 4, 0.4);
            if let Some(mutant) = rewire_nonisomorphic(&mut rng, &g, 100) {
                produced += 1;
                assert!(mutant.graph().is_connected());
                assert_eq!(mutant.graph().edge_count(), g.graph().edge_count());
                assert!(!brute_force_isomorphic(g.graph(), mutant.graph())
                    .unwrap()
                    .is_isomorphic());
            }
        }
        assert!(produced > 20, "mutation should almost always succeed");
    }

    #[test]
    fn complete_bipartite_cannot_be_rewired() {
        let edges = (0..3).flat_map(|a| (3..6).map(move |b| (a, b)));
        let g = Graph::from_edges(6, edges).unwrap();
        let b = BipartiteGraph::new(g, vec![0, 1, 2], vec![3, 4, 5]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(rewire_nonisomorphic(&mut rng, &b, 50).is_none());
    }
}
