//! Vertex connectivity and internally vertex-disjoint paths.
//!
//! Everything reduces to unit-capacity max-flow on the split digraph: each
//! vertex `v` becomes `v_in -> v_out` with capacity 1 (unbounded for the
//! terminals) and each edge `{u, w}` becomes `u_out -> w_in` and
//! `w_out -> u_in`. Augmenting paths are found by BFS that scans arcs in
//! ascending head order, so results are reproducible.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("vertex connectivity needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex connectivity is defined here for undirected graphs only")]
    Directed,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("source and target must differ (both {0})")]
    SameEndpoints(Vertex),
    #[error("path count must be at least 1")]
    ZeroPaths,
    #[error("requested {requested} disjoint paths but at most {max} exist")]
    Infeasible { requested: usize, max: usize },
}

/// Internally vertex-disjoint `source`-`target` paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    pub source: Vertex,
    pub target: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Interior vertices of path `i`.
    pub fn interior(&self, i: usize) -> &[Vertex] {
        let p = &self.paths[i];
        &p[1..p.len() - 1]
    }

    /// Checks the path-set invariants against `g` using adjacency queries only.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut used = BTreeSet::new();
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() < 2 || p[0] != self.source || p[p.len() - 1] != self.target {
                return Err(format!("path {i} does not run from {} to {}", self.source, self.target));
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {i} uses missing edge {}-{}", w[0], w[1]));
                }
            }
            let mut own = BTreeSet::new();
            for &v in p {
                if !own.insert(v) {
                    return Err(format!("path {i} revisits vertex {v}"));
                }
            }
            for &v in &p[1..p.len() - 1] {
                if !used.insert(v) {
                    return Err(format!("path {i} shares interior vertex {v} with another path"));
                }
            }
        }
        if self.paths.iter().filter(|p| p.len() == 2).count() > 1 {
            return Err("direct edge used more than once".into());
        }
        Ok(())
    }
}

struct Arc {
    head: usize,
    cap: u32,
    // index of the paired reverse arc
    rev: usize,
}

/// Residual network of the split digraph for a fixed terminal pair.
struct SplitNetwork {
    arcs: Vec<Arc>,
    // arc ids per node, in ascending head order
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

const UNBOUNDED: u32 = u32::MAX / 2;

fn v_in(v: Vertex) -> usize {
    2 * v
}

fn v_out(v: Vertex) -> usize {
    2 * v + 1
}

impl SplitNetwork {
    fn new(g: &Graph, s: Vertex, t: Vertex) -> Self {
        let mut net = SplitNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); 2 * g.n()],
            source: v_out(s),
            sink: v_in(t),
        };
        for v in 0..g.n() {
            let cap = if v == s || v == t { UNBOUNDED } else { 1 };
            net.add_arc(v_in(v), v_out(v), cap);
        }
        for u in 0..g.n() {
            for &w in g.neighbors(u) {
                // undirected neighbors are listed from both sides already
                net.add_arc(v_out(u), v_in(w), 1);
            }
        }
        for list in &mut net.out {
            let arcs = &net.arcs;
            list.sort_by_key(|&a| arcs[a].head);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let fwd = self.arcs.len();
        self.arcs.push(Arc { head: to, cap, rev: fwd + 1 });
        self.arcs.push(Arc { head: from, cap: 0, rev: fwd });
        self.out[from].push(fwd);
        self.out[to].push(fwd + 1);
    }

    /// One BFS augmentation of a single unit. Returns false when no
    /// augmenting path is left.
    fn augment(&mut self) -> bool {
        let nodes = self.out.len();
        let mut via: Vec<Option<usize>> = vec![None; nodes];
        let mut seen = vec![false; nodes];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            if x == self.sink {
                break;
            }
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.head] {
                    seen[arc.head] = true;
                    via[arc.head] = Some(a);
                    queue.push_back(arc.head);
                }
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut x = self.sink;
        while let Some(a) = via[x] {
            self.arcs[a].cap -= 1;
            let rev = self.arcs[a].rev;
            self.arcs[rev].cap += 1;
            x = self.arcs[rev].head;
        }
        true
    }

    /// Augments until the flow reaches `limit` or saturates.
    fn max_flow(&mut self, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment() {
            flow += 1;
        }
        flow
    }

    /// Flow carried by the original (even-indexed) arc `a`.
    fn flow_on(&self, a: usize) -> u32 {
        self.arcs[a + 1].cap
    }

    /// Splits the current flow into unit paths, expressed in original
    /// vertex ids.
    fn decompose(&mut self, s: Vertex, t: Vertex) -> Vec<Vec<Vertex>> {
        let mut used = vec![0u32; self.arcs.len()];
        let mut paths = Vec::new();
        loop {
            let mut node = self.source;
            let mut path = vec![s];
            let mut guard = 0;
            while node != self.sink {
                let next = self.out[node]
                    .iter()
                    .copied()
                    .find(|&a| a % 2 == 0 && self.flow_on(a) > used[a]);
                let Some(a) = next else { break };
                used[a] += 1;
                node = self.arcs[a].head;
                if node % 2 == 0 {
                    path.push(node / 2);
                }
                guard += 1;
                assert!(guard <= self.arcs.len(), "flow decomposition did not terminate");
            }
            if node != self.sink {
                break;
            }
            debug_assert_eq!(path.last(), Some(&t));
            paths.push(path);
        }
        paths
    }
}

fn check_pair(g: &Graph, s: Vertex, t: Vertex) -> Result<(), ConnectivityError> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(ConnectivityError::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(ConnectivityError::SameEndpoints(s));
    }
    Ok(())
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, capped at
/// `limit`. A direct edge counts as one path.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> Result<usize, ConnectivityError> {
    check_pair(g, s, t)?;
    Ok(SplitNetwork::new(g, s, t).max_flow(limit))
}

/// `k` internally vertex-disjoint `s`-`t` paths, or
/// [`ConnectivityError::Infeasible`] carrying the true maximum.
pub fn disjoint_paths(g: &Graph, s: Vertex, t: Vertex, k: usize) -> Result<PathSet, ConnectivityError> {
    check_pair(g, s, t)?;
    if k == 0 {
        return Err(ConnectivityError::ZeroPaths);
    }
    let mut net = SplitNetwork::new(g, s, t);
    let flow = net.max_flow(k);
    if flow < k {
        return Err(ConnectivityError::Infeasible { requested: k, max: flow });
    }
    let paths = net.decompose(s, t);
    debug_assert_eq!(paths.len(), k);
    Ok(PathSet { source: s, target: t, paths })
}

/// Vertex connectivity of an undirected graph: the minimum over
/// non-adjacent pairs of the local connectivity, `n - 1` for complete
/// graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    if g.is_directed() {
        return Err(ConnectivityError::Directed);
    }
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooFewVertices(n));
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let flow = SplitNetwork::new(g, s, t).max_flow(best);
            best = best.min(flow);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// `true` iff `vertex_connectivity(g) >= k`. Graphs with fewer than two
/// vertices are only 0-connected.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.is_directed() || g.n() < 2 || g.n() - 1 < k {
        return false;
    }
    for s in 0..g.n() {
        for t in s + 1..g.n() {
            if !g.has_edge(s, t) && SplitNetwork::new(g, s, t).max_flow(k) < k {
                return false;
            }
        }
    }
    true
}
