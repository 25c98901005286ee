#![allow(dead_code)]

use cubenet::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Arbitrary simple graphs with `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |keep| graph_from_mask(n, &keep))
    })
}

pub fn graph_from_mask(n: usize, keep: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::new(n, pairs.zip(keep).filter(|(_, &k)| k).map(|(e, _)| e)).unwrap()
}

/// A seeded random graph with `n` vertices and edge probability `density`.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let keep: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.random::<f64>() < density).collect();
    graph_from_mask(n, &keep)
}

/// `g` with its vertices shuffled.
pub fn shuffled(g: &Graph, seed: u64) -> Graph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Graph::new(
        g.vertex_count(),
        g.edges().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])),
    )
    .unwrap()
}
