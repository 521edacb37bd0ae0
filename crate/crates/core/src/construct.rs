//! Building UNNs: joins of smaller networks, the spanning-tree extraction of
//! a large UNN subgraph, and the cheapest edge extension making a graph a
//! UNN (see [`crate::extend`]).

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::connectivity::is_k_connected;
use crate::graph::{Graph, GraphError, Vertex};
use crate::unn::is_unn_naive;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("construction needs undirected graphs")]
    Directed,
    #[error("{side} input is not a UNN (vertices {} and {} share a neighborhood)", .witness.0, .witness.1)]
    NotUnn { side: &'static str, witness: (Vertex, Vertex) },
    #[error("join produced twins {} and {} (ids in the joined graph)", .witness.0, .witness.1)]
    JoinCreatedTwins { witness: (Vertex, Vertex) },
    #[error("pair list is empty")]
    NoPairs,
    #[error("vertex {0} appears in more than one pair")]
    RepeatedEndpoint(Vertex),
    #[error("expected {expected} pairs, got {got}")]
    PairCount { expected: usize, got: usize },
    #[error("{side} input is not {k}-connected")]
    NotKConnected { side: &'static str, k: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Two vertex-disjoint graphs and the edges that will connect them.
/// `right`'s ids are shifted by `left.n()` in the result.
#[derive(Debug, Clone)]
pub struct JoinSpec {
    pub left: Graph,
    pub right: Graph,
    pub pairs: Vec<(Vertex, Vertex)>,
}

fn validate_pairs(left: &Graph, right: &Graph, pairs: &[(Vertex, Vertex)]) -> Result<(), ConstructError> {
    if left.is_directed() || right.is_directed() {
        return Err(ConstructError::Directed);
    }
    if pairs.is_empty() {
        return Err(ConstructError::NoPairs);
    }
    let mut lefts = BTreeSet::new();
    let mut rights = BTreeSet::new();
    for &(u, v) in pairs {
        if u >= left.n() {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: left.n() }.into());
        }
        if v >= right.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: right.n() }.into());
        }
        if !lefts.insert(u) {
            return Err(ConstructError::RepeatedEndpoint(u));
        }
        if !rights.insert(v) {
            return Err(ConstructError::RepeatedEndpoint(v));
        }
    }
    Ok(())
}

/// Disjoint union plus one edge per pair. No property checks.
pub fn join_graphs(left: &Graph, right: &Graph, pairs: &[(Vertex, Vertex)]) -> Graph {
    let mut h = left.disjoint_union(right);
    for &(u, v) in pairs {
        h.add_edge(u, v + left.n()).expect("pair endpoints validated");
    }
    h
}

/// Joins two UNNs by a matching of connecting edges.
///
/// The joined graph can still contain twins across the two sides when a
/// side has a vertex of degree at most one, e.g. two copies of `K2` joined
/// crosswise form `C4`. Such joins are refused with
/// [`ConstructError::JoinCreatedTwins`].
pub fn join_unns(spec: &JoinSpec) -> Result<Graph, ConstructError> {
    validate_pairs(&spec.left, &spec.right, &spec.pairs)?;
    for (side, g) in [("left", &spec.left), ("right", &spec.right)] {
        let verdict = is_unn_naive(g).map_err(|_| ConstructError::Directed)?;
        if let Some(witness) = verdict.witness {
            return Err(ConstructError::NotUnn { side, witness });
        }
    }
    let h = join_graphs(&spec.left, &spec.right, &spec.pairs);
    match is_unn_naive(&h).expect("undirected").witness {
        None => Ok(h),
        Some(witness) => Err(ConstructError::JoinCreatedTwins { witness }),
    }
}

/// Joins two `k`-connected graphs with exactly `k` disjoint connecting
/// edges; the result is again `k`-connected.
pub fn join_k_connected(
    left: &Graph,
    right: &Graph,
    pairs: &[(Vertex, Vertex)],
    k: usize,
) -> Result<Graph, ConstructError> {
    validate_pairs(left, right, pairs)?;
    if pairs.len() != k {
        return Err(ConstructError::PairCount { expected: k, got: pairs.len() });
    }
    for (side, g) in [("left", left), ("right", right)] {
        if !is_k_connected(g, k) {
            return Err(ConstructError::NotKConnected { side, k });
        }
    }
    let h = join_graphs(left, right, pairs);
    debug_assert!(is_k_connected(&h, k));
    Ok(h)
}

/// BFS tree rooted at 0, visiting neighbors in ascending order.
pub fn spanning_tree(g: &Graph) -> Result<Graph, ConstructError> {
    if g.is_directed() {
        return Err(ConstructError::Directed);
    }
    let n = g.n();
    let mut tree = Graph::new(n);
    if n == 0 {
        return Ok(tree);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                tree.add_edge(u, w)?;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(ConstructError::Disconnected);
    }
    Ok(tree)
}

/// On a tree, checks that the vertices of degree at least 2 have pairwise
/// distinct neighborhoods (taken in the whole tree).
pub fn inner_nodes_unique(tree: &Graph) -> Result<bool, ConstructError> {
    if !tree.is_tree() {
        return Err(ConstructError::NotATree);
    }
    let mut inner: Vec<&BTreeSet<Vertex>> =
        (0..tree.n()).filter(|&v| tree.degree(v) >= 2).map(|v| tree.neighbors(v)).collect();
    inner.sort();
    Ok(inner.windows(2).all(|w| w[0] != w[1]))
}

/// Output of [`maximal_unn_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnnSubgraphResult {
    /// The UNN, relabelled to `0..kept_vertices.len()`.
    pub kept: Graph,
    /// Original id of each vertex of `kept`, ascending.
    pub kept_vertices: Vec<Vertex>,
    pub excluded: BTreeSet<Vertex>,
    pub chosen_tree: Graph,
    /// Excluded vertices whose degree in the input exceeds 1.
    pub excluded_high_degree: BTreeSet<Vertex>,
}

impl UnnSubgraphResult {
    /// Edges of `kept` in original ids.
    pub fn kept_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.kept
            .edges()
            .map(|(u, v)| (self.kept_vertices[u], self.kept_vertices[v]))
            .collect()
    }
}

/// Large UNN subgraph through a spanning tree `T`.
///
/// Keeps every inner vertex of `T` (degree at least 2 in `T`) and the tree
/// edges between them. Every inner vertex adjacent to leaves of `T`
/// additionally keeps its smallest-id leaf through the tree edge. All
/// other leaves are excluded: any of them would share the neighborhood
/// `{parent}` with the kept sibling.
pub fn maximal_unn_subgraph(g: &Graph) -> Result<UnnSubgraphResult, ConstructError> {
    let tree = spanning_tree(g)?;
    let n = g.n();
    let inner: BTreeSet<Vertex> = (0..n).filter(|&v| tree.degree(v) >= 2).collect();

    let mut kept_set = BTreeSet::new();
    let mut kept_edges = Vec::new();
    if inner.is_empty() {
        // at most two vertices: K1 or K2, already a UNN
        kept_set.extend(0..n);
        kept_edges.extend(tree.edges());
    } else {
        kept_set.extend(inner.iter().copied());
        kept_edges.extend(tree.edges().filter(|(u, v)| inner.contains(u) && inner.contains(v)));
        for &v in &inner {
            if let Some(&leaf) = tree.neighbors(v).iter().find(|&&w| tree.degree(w) == 1) {
                kept_set.insert(leaf);
                kept_edges.push((v, leaf));
            }
        }
    }

    let kept_vertices: Vec<Vertex> = kept_set.iter().copied().collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in kept_vertices.iter().enumerate() {
        index[v] = i;
    }
    let mut kept = Graph::new(kept_vertices.len());
    for (u, v) in kept_edges {
        kept.add_edge(index[u], index[v])?;
    }
    let excluded: BTreeSet<Vertex> = (0..n).filter(|v| !kept_set.contains(v)).collect();
    let excluded_high_degree = excluded.iter().copied().filter(|&v| g.degree(v) > 1).collect();
    debug_assert!(is_unn_naive(&kept).map(|v| v.is_unn).unwrap_or(false));
    Ok(UnnSubgraphResult { kept, kept_vertices, excluded, chosen_tree: tree, excluded_high_degree })
}
