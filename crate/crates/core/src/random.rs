//! Seeded random graph generators used by property tests and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::construct::join_k_connected;
use crate::graph::{Graph, Vertex};
use crate::unn::is_unn_naive;

/// Retry cap for rejection sampling of UNNs.
pub const UNN_RETRIES: usize = 10_000;

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

/// Rejection-samples `G(n, 1/2)` until it is a UNN.
pub fn random_unn<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<Graph> {
    (0..UNN_RETRIES)
        .map(|_| random_graph(n, 0.5, rng))
        .find(|g| is_unn_naive(g).expect("undirected").is_unn)
}

/// Uniform labelled tree on `n >= 1` vertices, decoded from a random
/// Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.add_edge(leaf, c).expect("valid pair");
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]).expect("valid pair");
    g
}

/// Random tree plus each remaining pair independently with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

/// `k` distinct vertices of `g`, in random order.
pub fn random_distinct<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<Vertex> {
    let mut all: Vec<Vertex> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

/// `k`-connected graph grown from copies of `K_{k+1}` by `joins` random
/// matching joins of `k` edges.
pub fn random_k_connected<R: Rng + ?Sized>(k: usize, joins: usize, rng: &mut R) -> Graph {
    let mut g = Graph::complete(k + 1);
    for _ in 0..joins {
        let other = if rng.gen_bool(0.5) { Graph::complete(k + 1) } else { random_k_connected(k, 1, rng) };
        let left = random_distinct(g.n(), k, rng);
        let right = random_distinct(other.n(), k, rng);
        let pairs: Vec<(Vertex, Vertex)> = left.into_iter().zip(right).collect();
        g = join_k_connected(&g, &other, &pairs, k).expect("inputs are k-connected");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..40 {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.n(), n);
            assert!(t.is_tree());
        }
    }

    #[test]
    fn connected_and_unn_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..20 {
            assert!(random_connected(n, 0.2, &mut rng).is_connected());
            if let Some(g) = random_unn(n, &mut rng) {
                assert!(is_unn_naive(&g).unwrap().is_unn);
            }
        }
    }
}
