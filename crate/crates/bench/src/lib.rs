//! Instance builders shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trapiso::generate::{random_connected_bipartite, relabel};
use trapiso::graph::BipartiteGraph;

/// A fixed connected bipartite instance of the given side sizes.
pub fn seeded_instance(seed: u64, s: usize, t: usize) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_bipartite(&mut rng, s, t, 0.5)
}

/// A relabeled copy, so isomorphism benchmarks search for a real witness.
pub fn relabeled_copy(seed: u64, g: &BipartiteGraph) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shuffled = relabel(&mut rng, g.graph());
    shuffled
        .bipartition()
        .expect("relabeling preserves bipartiteness")
}
