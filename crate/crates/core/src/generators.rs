//! Seeded random graphs and bundled datasets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, LoadOptions};

/// Zachary's karate club (34 nodes, 78 edges), 0-indexed edge list.
pub const KARATE_EDGE_LIST: &str = include_str!("../data/karate.txt");

pub fn karate() -> Graph {
    let opts = LoadOptions {
        allow_comments: true,
        ..Default::default()
    };
    Graph::parse_edge_list(KARATE_EDGE_LIST, opts)
        .expect("bundled karate edge list is valid")
        .graph
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Uniform random graph with exactly `m` edges (`G(n, m)`).
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(m <= pairs, "G(n, m) needs m <= n(n-1)/2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = sample(&mut rng, pairs, m)
        .into_iter()
        .map(|idx| unrank_pair(n, idx))
        .collect();
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Maps `0..n(n-1)/2` onto pairs `(u, v)`, `u < v`, in row-major order.
fn unrank_pair(n: usize, mut idx: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn karate_shape() {
        let g = karate();
        assert_eq!((g.n(), g.m()), (34, 78));
    }

    #[test]
    fn gnm_has_exact_edge_count() {
        let g = gnm(50, 200, 3);
        assert_eq!((g.n(), g.m()), (50, 200));
        assert_eq!(gnm(50, 200, 3), g);
    }

    #[test]
    fn unrank_covers_all_pairs() {
        let n = 6;
        let pairs: Vec<_> = (0..n * (n - 1) / 2).map(|i| unrank_pair(n, i)).collect();
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                expected.push((u, v));
            }
        }
        assert_eq!(pairs, expected);
    }
}
