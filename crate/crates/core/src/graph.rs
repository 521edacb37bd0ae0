//! Simple graphs on dense vertex ids `0..n`, their adjacency matrices, and
//! the edge-list / DOT text formats.
//!
//! The edge-list format is line oriented:
//!
//! ```text
//! # comment
//! n 4
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The header may carry a trailing `directed` keyword. Everything after a `#`
//! on a line is ignored.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("adjacency matrix: {0}")]
    Matrix(String),
}

/// Which side of a directed edge defines a neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

/// A simple graph without self-loops or parallel edges.
///
/// Undirected edges are stored once, as `(min, max)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<BTreeSet<Vertex>>,
    inc: Vec<BTreeSet<Vertex>>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self::with_direction(n, false)
    }

    pub fn new_directed(n: usize) -> Self {
        Self::with_direction(n, true)
    }

    pub fn with_direction(n: usize, directed: bool) -> Self {
        Graph {
            directed,
            out: vec![BTreeSet::new(); n],
            inc: if directed { vec![BTreeSet::new(); n] } else { Vec::new() },
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::with_direction(n, directed);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.insert_unchecked(0, n - 1);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for v in 1..=leaves {
            g.insert_unchecked(0, v);
        }
        g
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Adds an edge; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.insert_unchecked(u, v))
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = if self.directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !self.edges.insert(key) {
            return false;
        }
        self.out[u].insert(v);
        if self.directed {
            self.inc[v].insert(u);
        } else {
            self.out[v].insert(u);
        }
        true
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = if self.directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !self.edges.remove(&key) {
            return false;
        }
        self.out[u].remove(&v);
        if self.directed {
            self.inc[v].remove(&u);
        } else {
            self.out[v].remove(&u);
        }
        true
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `(min, max)` pairs for undirected graphs,
    /// arcs `(tail, head)` for directed ones.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.out[u].contains(&v)
    }

    /// Out-neighbors (or all neighbors, if undirected) of `v`. Panics if `v`
    /// is out of range.
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        if self.directed {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn neighborhood(&self, v: Vertex) -> Result<Neighborhood, GraphError> {
        self.neighborhood_dir(v, Direction::Out)
    }

    pub fn neighborhood_dir(&self, v: Vertex, dir: Direction) -> Result<Neighborhood, GraphError> {
        self.check_vertex(v)?;
        let members = match dir {
            Direction::Out => self.out[v].clone(),
            Direction::In => self.in_neighbors(v).clone(),
        };
        Ok(Neighborhood { vertex: v, members })
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.n();
        let mut entries = vec![0u8; n * n];
        for (u, v) in self.edges() {
            entries[u * n + v] = 1;
            if !self.directed {
                entries[v * n + u] = 1;
            }
        }
        AdjacencyMatrix { n, entries }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            let nbrs = self.out[u].iter().chain(self.in_neighbors(u).iter());
            for &w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Tree test for undirected graphs: connected with `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        !self.directed && self.n() > 0 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in
    /// ascending order of the original ids. Also returns the id map.
    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = keep.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::with_direction(ids.len(), self.directed);
        for (u, v) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                sub.insert_unchecked(index[u], index[v]);
            }
        }
        (sub, ids)
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut g = Graph::with_direction(offset + other.n(), self.directed || other.directed);
        for (u, v) in self.edges() {
            g.insert_unchecked(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_unchecked(u + offset, v + offset);
        }
        g
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    let (count, directed) = match tokens.as_slice() {
                        ["n", count] => (*count, false),
                        ["n", count, "directed"] => (*count, true),
                        _ => return Err(err(format!("expected header `n <count> [directed]`, found `{line}`"))),
                    };
                    let n: usize = count
                        .parse()
                        .map_err(|_| err(format!("invalid vertex count `{count}`")))?;
                    graph = Some(Graph::with_direction(n, directed));
                }
                Some(g) => {
                    let [u, v] = tokens.as_slice() else {
                        return Err(err(format!("expected `<u> <v>`, found `{line}`")));
                    };
                    let u: Vertex = u.parse().map_err(|_| err(format!("invalid vertex `{u}`")))?;
                    let v: Vertex = v.parse().map_err(|_| err(format!("invalid vertex `{v}`")))?;
                    g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
                }
            }
        }
        graph.ok_or(GraphError::Parse { line: 0, msg: "missing header `n <count>`".into() })
    }

    /// Inverse of [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        if self.directed {
            let _ = writeln!(s, "n {} directed", self.n());
        } else {
            let _ = writeln!(s, "n {}", self.n());
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// DOT export. Only isolated vertices get an explicit node statement;
    /// every other vertex appears through its edges.
    pub fn to_dot(&self) -> String {
        let (kind, arrow) = if self.directed { ("digraph", "->") } else { ("graph", "--") };
        let mut s = format!("{kind} {{\n");
        for v in 0..self.n() {
            if self.out[v].is_empty() && self.in_neighbors(v).is_empty() {
                let _ = writeln!(s, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} {arrow} {v};");
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("directed", &self.directed)
            .field("edges", &self.edges)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub vertex: Vertex,
    pub members: BTreeSet<Vertex>,
}

/// Dense 0/1 adjacency matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    /// Validates squareness, 0/1 entries and a zero diagonal.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::Matrix(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(GraphError::Matrix(format!("entry ({i},{j}) = {x} is not 0/1")));
                }
                if i == j && x != 0 {
                    return Err(GraphError::Matrix(format!("nonzero diagonal entry at {i}")));
                }
                entries.push(x);
            }
        }
        Ok(AdjacencyMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> AdjacencyMatrix {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        AdjacencyMatrix { n, entries }
    }

    /// Graph with an edge for every 1-entry; undirected iff the matrix is
    /// symmetric.
    pub fn to_graph(&self) -> Graph {
        let directed = !self.is_symmetric();
        let mut g = Graph::with_direction(self.n, directed);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) == 1 && (directed || i < j) {
                    g.insert_unchecked(i, j);
                }
            }
        }
        g
    }
}
