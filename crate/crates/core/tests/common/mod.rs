//! Brute-force oracles shared by the integration and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use unnet::graph::{Graph, Vertex};

/// Every undirected graph on `n` labelled vertices, indexed by edge mask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, false, edges).expect("valid edges")
    })
}

/// Literal pairwise comparison of neighborhoods.
pub fn has_twins(g: &Graph) -> bool {
    (0..g.n()).any(|u| (u + 1..g.n()).any(|v| g.neighbors(u) == g.neighbors(v)))
}

fn connected_without(g: &Graph, removed: &BTreeSet<Vertex>, s: Vertex, t: Vertex) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for &w in g.neighbors(u) {
            if !seen[w] && !removed.contains(&w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

fn subsets(items: &[Vertex], size: usize) -> Vec<BTreeSet<Vertex>> {
    if size == 0 {
        return vec![BTreeSet::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(x);
            out.push(rest);
        }
    }
    out
}

/// Smallest vertex set separating non-adjacent `s` and `t`.
pub fn brute_local_cut(g: &Graph, s: Vertex, t: Vertex) -> usize {
    let others: Vec<Vertex> = (0..g.n()).filter(|&v| v != s && v != t).collect();
    (0..=others.len())
        .find(|&size| subsets(&others, size).iter().any(|cut| !connected_without(g, cut, s, t)))
        .expect("removing every other vertex separates non-adjacent vertices")
}

/// Smallest vertex cut of the whole graph, `n - 1` for complete graphs.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.n();
    let all: Vec<Vertex> = (0..n).collect();
    for size in 0..n.saturating_sub(1) {
        for cut in subsets(&all, size) {
            let rest: Vec<Vertex> = all.iter().copied().filter(|v| !cut.contains(v)).collect();
            if rest.iter().any(|&t| !connected_without(g, &cut, rest[0], t)) {
                return size;
            }
        }
    }
    n.saturating_sub(1)
}
