//! Cheapest set of new edges turning a graph into a UNN.
//!
//! Small inputs (`n <= 6`) are solved by enumerating every subset of
//! non-edges. Larger ones use best-first branch and bound: a node fixes
//! some candidate edges as added and some as banned, and the search
//! branches on how to break the first remaining pair of twins.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Cost = Ratio<u64>;

/// Largest `n` solved exhaustively by [`smallest_unn_extension`].
pub const EXHAUSTIVE_MAX_N: usize = 6;

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("extension is defined for undirected graphs only")]
    Directed,
    #[error("cost given for existing edge {0}-{1}")]
    CostOnExistingEdge(Vertex, Vertex),
    #[error("cost given for invalid pair {0}-{1}")]
    InvalidPair(Vertex, Vertex),
    #[error("line {line}: {msg}")]
    CostParse { line: usize, msg: String },
    #[error("exhaustive search limited to {max} candidate edges, got {got}")]
    TooManyCandidates { max: usize, got: usize },
}

/// Per-edge nonnegative costs; unlisted pairs cost `default`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCosts {
    pub default: Cost,
    overrides: BTreeMap<(Vertex, Vertex), Cost>,
}

impl Default for EdgeCosts {
    fn default() -> Self {
        EdgeCosts::unit()
    }
}

impl EdgeCosts {
    pub fn unit() -> Self {
        EdgeCosts { default: Cost::from_integer(1), overrides: BTreeMap::new() }
    }

    pub fn set(&mut self, u: Vertex, v: Vertex, cost: Cost) {
        self.overrides.insert((u.min(v), u.max(v)), cost);
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Cost {
        self.overrides.get(&(u.min(v), u.max(v))).copied().unwrap_or(self.default)
    }

    /// Lines `<u> <v> <cost>` where cost is an integer, a fraction `a/b`, or
    /// a decimal. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ExtendError> {
        let mut costs = EdgeCosts::unit();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ExtendError::CostParse { line: idx + 1, msg };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [u, v, c] = tokens.as_slice() else {
                return Err(err(format!("expected `<u> <v> <cost>`, found `{line}`")));
            };
            let u: Vertex = u.parse().map_err(|_| err(format!("invalid vertex `{u}`")))?;
            let v: Vertex = v.parse().map_err(|_| err(format!("invalid vertex `{v}`")))?;
            let cost = parse_cost(c).ok_or_else(|| err(format!("invalid cost `{c}`")))?;
            costs.set(u, v, cost);
        }
        Ok(costs)
    }

    fn validate(&self, g: &Graph) -> Result<(), ExtendError> {
        for &(u, v) in self.overrides.keys() {
            if u == v || v >= g.n() {
                return Err(ExtendError::InvalidPair(u, v));
            }
            if g.has_edge(u, v) {
                return Err(ExtendError::CostOnExistingEdge(u, v));
            }
        }
        Ok(())
    }
}

fn parse_cost(s: &str) -> Option<Cost> {
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let scale = 10u64.pow(frac.len() as u32);
        let frac: u64 = frac.parse().ok()?;
        return Some(Cost::new(int.checked_mul(scale)?.checked_add(frac)?, scale));
    }
    let r: Cost = s.parse().ok()?;
    Some(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSolution {
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub cost: Cost,
    /// Proven optimal (exhaustive search, or branch and bound that ran to
    /// completion).
    pub optimal: bool,
}

impl ExtensionSolution {
    pub fn apply(&self, g: &Graph) -> Graph {
        let mut h = g.clone();
        for &(u, v) in &self.added_edges {
            h.add_edge(u, v).expect("candidate edges are valid");
        }
        h
    }
}

/// Candidate non-edges with costs, sorted by (cost, edge).
fn candidates(g: &Graph, costs: &EdgeCosts) -> Vec<((Vertex, Vertex), Cost)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                out.push(((u, v), costs.get(u, v)));
            }
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

/// Row bitsets of the adjacency matrix.
#[derive(Clone)]
struct Rows {
    words: usize,
    bits: Vec<u64>,
}

impl Rows {
    fn of(g: &Graph) -> Self {
        let words = g.n().div_ceil(64).max(1);
        let mut rows = Rows { words, bits: vec![0; words * g.n()] };
        for (u, v) in g.edges() {
            rows.toggle(u, v);
        }
        rows
    }

    fn toggle(&mut self, u: Vertex, v: Vertex) {
        self.bits[u * self.words + v / 64] ^= 1 << (v % 64);
        self.bits[v * self.words + u / 64] ^= 1 << (u % 64);
    }

    fn row(&self, v: Vertex) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn n(&self) -> usize {
        self.bits.len() / self.words
    }

    /// All twin pairs `(u, v)`, `u < v`, sorted.
    fn twin_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut order: Vec<Vertex> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.row(a).cmp(self.row(b)).then(a.cmp(&b)));
        let mut pairs = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let mut j = i + 1;
            while j < order.len() && self.row(order[j]) == self.row(order[i]) {
                j += 1;
            }
            for a in i..j {
                for b in a + 1..j {
                    pairs.push((order[a], order[b]));
                }
            }
            i = j;
        }
        pairs.sort();
        pairs
    }

    fn has_twins(&self) -> bool {
        let mut rows: Vec<&[u64]> = (0..self.n()).map(|v| self.row(v)).collect();
        rows.sort();
        rows.windows(2).any(|w| w[0] == w[1])
    }
}

/// Exact optimum by enumerating every subset of non-edges. Ties go to
/// fewer edges, then to the smallest subset bitmask over candidates in
/// (cost, edge) order.
pub fn exhaustive_extension(g: &Graph, costs: &EdgeCosts) -> Result<ExtensionSolution, ExtendError> {
    if g.is_directed() {
        return Err(ExtendError::Directed);
    }
    costs.validate(g)?;
    let cands = candidates(g, costs);
    if cands.len() > 24 {
        return Err(ExtendError::TooManyCandidates { max: 24, got: cands.len() });
    }
    let base = Rows::of(g);
    let mut best: Option<(Cost, u32, u32)> = None;
    for mask in 0u32..(1u32 << cands.len()) {
        let cost: Cost = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i].1).sum();
        let key = (cost, mask.count_ones(), mask);
        if best.is_some_and(|b| (b.0, b.1, b.2) <= key) {
            continue;
        }
        let mut rows = base.clone();
        for (i, ((u, v), _)) in cands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows.toggle(*u, *v);
            }
        }
        if !rows.has_twins() {
            best = Some(key);
        }
    }
    let (cost, _, mask) = best.expect("the complete graph is always a UNN");
    let mut added: Vec<(Vertex, Vertex)> =
        (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i].0).collect();
    added.sort();
    Ok(ExtensionSolution { added_edges: added, cost, optimal: true })
}

#[derive(Clone)]
struct Node {
    rows: Rows,
    added: Vec<usize>,
    // added or banned
    decided: Vec<bool>,
    cost: Cost,
}

/// Outcome of bounding a search node.
enum Bound {
    Feasible,
    Infeasible,
    Lower { bound: Cost, branch_pair: (Vertex, Vertex) },
}

struct Search<'a> {
    cands: &'a [((Vertex, Vertex), Cost)],
    // candidate ids touching each vertex, in candidate order
    incident: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn open<'b>(&'b self, node: &'b Node, v: Vertex) -> impl Iterator<Item = usize> + 'b {
        self.incident[v].iter().copied().filter(move |&c| !node.decided[c])
    }

    /// Every twin pair `(u, v)` needs an added edge at `u` or `v`. Pairs
    /// chosen so that no open candidate touches two of them contribute
    /// their cheapest option independently.
    fn bound(&self, node: &Node) -> Bound {
        let pairs = node.rows.twin_pairs();
        if pairs.is_empty() {
            return Bound::Feasible;
        }
        let n = node.rows.n();
        let mut cheapest = Vec::with_capacity(pairs.len());
        for &(u, v) in &pairs {
            let min = self.open(node, u).chain(self.open(node, v)).map(|c| self.cands[c].1).min();
            match min {
                Some(c) => cheapest.push(c),
                None => return Bound::Infeasible,
            }
        }
        let mut covered = vec![false; n];
        let mut bound = Cost::from_integer(0);
        for (&(u, v), &c) in pairs.iter().zip(&cheapest) {
            if covered[u] || covered[v] {
                continue;
            }
            let touches_covered = self.open(node, u).chain(self.open(node, v)).any(|c| {
                let (a, b) = self.cands[c].0;
                covered[a] || covered[b]
            });
            if touches_covered {
                continue;
            }
            covered[u] = true;
            covered[v] = true;
            bound += c;
        }
        Bound::Lower { bound, branch_pair: pairs[0] }
    }
}

/// Best-first branch and bound. Stops after expanding `budget` nodes; the
/// result is then the best solution seen so far with `optimal = false`.
pub fn branch_and_bound_extension(
    g: &Graph,
    costs: &EdgeCosts,
    budget: usize,
) -> Result<ExtensionSolution, ExtendError> {
    if g.is_directed() {
        return Err(ExtendError::Directed);
    }
    costs.validate(g)?;
    let cands = candidates(g, costs);
    let mut incident = vec![Vec::new(); g.n()];
    for (i, ((u, v), _)) in cands.iter().enumerate() {
        incident[*u].push(i);
        incident[*v].push(i);
    }
    let search = Search { cands: &cands, incident };
    let finish = |node: &Node, optimal: bool| {
        let mut added: Vec<(Vertex, Vertex)> = node.added.iter().map(|&c| cands[c].0).collect();
        added.sort();
        ExtensionSolution { added_edges: added, cost: node.cost, optimal }
    };

    let root = Node {
        rows: Rows::of(g),
        added: Vec::new(),
        decided: vec![false; cands.len()],
        cost: Cost::from_integer(0),
    };
    let mut incumbent: Option<Node> = None;
    // (priority, insertion order) min-heap
    let mut heap = BinaryHeap::new();
    let mut store: Vec<Option<Node>> = Vec::new();
    let push = |heap: &mut BinaryHeap<Reverse<(Cost, usize)>>, store: &mut Vec<Option<Node>>, node: Node, f: Cost| {
        store.push(Some(node));
        heap.push(Reverse((f, store.len() - 1)));
    };
    match search.bound(&root) {
        Bound::Feasible => return Ok(finish(&root, true)),
        Bound::Infeasible => unreachable!("adding every candidate yields a complete graph"),
        Bound::Lower { bound, .. } => push(&mut heap, &mut store, root, bound),
    }

    let mut expanded = 0;
    while let Some(Reverse((f, id))) = heap.pop() {
        if incumbent.as_ref().is_some_and(|inc| inc.cost <= f) {
            return Ok(finish(incumbent.as_ref().unwrap(), true));
        }
        if expanded >= budget {
            break;
        }
        expanded += 1;
        let node = store[id].take().expect("each node is expanded once");
        let Bound::Lower { branch_pair: (u, v), .. } = search.bound(&node) else {
            continue;
        };
        let mut options: Vec<usize> = search.open(&node, u).chain(search.open(&node, v)).collect();
        options.sort_unstable();
        options.dedup();
        // child i adds options[i] and bans options[..i]
        let mut decided = node.decided.clone();
        for &c in &options {
            decided[c] = true;
            let mut child = Node {
                rows: node.rows.clone(),
                added: node.added.clone(),
                decided: decided.clone(),
                cost: node.cost + cands[c].1,
            };
            let (a, b) = cands[c].0;
            child.rows.toggle(a, b);
            child.added.push(c);
            match search.bound(&child) {
                Bound::Feasible => {
                    if incumbent.as_ref().is_none_or(|inc| child.cost < inc.cost) {
                        incumbent = Some(child);
                    }
                }
                Bound::Infeasible => {}
                Bound::Lower { bound, .. } => {
                    let f = child.cost + bound;
                    if incumbent.as_ref().is_none_or(|inc| f < inc.cost) {
                        push(&mut heap, &mut store, child, f);
                    }
                }
            }
        }
    }
    if heap.is_empty() {
        if let Some(inc) = &incumbent {
            return Ok(finish(inc, true));
        }
    }
    match incumbent {
        Some(inc) => Ok(finish(&inc, false)),
        None => {
            // out of budget without a feasible leaf: complete the graph
            let all = Node {
                rows: Rows::of(g),
                added: (0..cands.len()).collect(),
                decided: vec![true; cands.len()],
                cost: cands.iter().map(|c| c.1).sum(),
            };
            Ok(finish(&all, false))
        }
    }
}

/// Cheapest UNN extension: exhaustive for `n <= 6`, branch and bound with
/// the given node budget otherwise.
pub fn smallest_unn_extension(g: &Graph, costs: &EdgeCosts, budget: usize) -> Result<ExtensionSolution, ExtendError> {
    if g.n() <= EXHAUSTIVE_MAX_N {
        exhaustive_extension(g, costs)
    } else {
        branch_and_bound_extension(g, costs, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unn::is_unn_naive;

    fn unit() -> EdgeCosts {
        EdgeCosts::unit()
    }

    #[test]
    fn unn_input_needs_nothing() {
        for g in [Graph::path(4), Graph::complete(4)] {
            let s = smallest_unn_extension(&g, &unit(), DEFAULT_BUDGET).unwrap();
            assert!(s.added_edges.is_empty());
            assert_eq!(s.cost, Cost::from_integer(0));
            assert!(s.optimal);
            let b = branch_and_bound_extension(&g, &unit(), DEFAULT_BUDGET).unwrap();
            assert_eq!(b, s);
        }
    }

    #[test]
    fn k22_needs_both_intra_part_edges() {
        // adding only {0,1} leaves nb(2) = nb(3) = {0,1}
        let g = Graph::complete_bipartite(2, 2);
        let s = exhaustive_extension(&g, &unit()).unwrap();
        assert_eq!(s.cost, Cost::from_integer(2));
        assert_eq!(s.added_edges, vec![(0, 1), (2, 3)]);
        assert_eq!(branch_and_bound_extension(&g, &unit(), DEFAULT_BUDGET).unwrap().cost, s.cost);
    }

    #[test]
    fn star_needs_one_edge() {
        let g = Graph::star(3);
        let s = exhaustive_extension(&g, &unit()).unwrap();
        assert_eq!(s.cost, Cost::from_integer(1));
        assert_eq!(s.added_edges, vec![(1, 2)]);
        assert!(is_unn_naive(&s.apply(&g)).unwrap().is_unn);
    }

    #[test]
    fn costs_steer_the_choice() {
        let g = Graph::star(3);
        let mut costs = unit();
        costs.set(1, 2, Cost::new(5, 2));
        costs.set(1, 3, Cost::new(5, 2));
        let s = exhaustive_extension(&g, &costs).unwrap();
        assert_eq!(s.added_edges, vec![(2, 3)]);
        let b = branch_and_bound_extension(&g, &costs, DEFAULT_BUDGET).unwrap();
        assert_eq!((b.added_edges, b.cost, b.optimal), (vec![(2, 3)], Cost::from_integer(1), true));
    }

    #[test]
    fn cost_parsing() {
        let c = EdgeCosts::parse("# costs\n0 1 3/2\n2 1 0.25\n0 3 4\n").unwrap();
        assert_eq!(c.get(1, 0), Cost::new(3, 2));
        assert_eq!(c.get(1, 2), Cost::new(1, 4));
        assert_eq!(c.get(0, 3), Cost::from_integer(4));
        assert_eq!(c.get(2, 3), Cost::from_integer(1));
        assert!(matches!(EdgeCosts::parse("0 1 -1"), Err(ExtendError::CostParse { line: 1, .. })));
        assert!(matches!(EdgeCosts::parse("0 1"), Err(ExtendError::CostParse { line: 1, .. })));
        let g = Graph::path(3);
        assert_eq!(
            exhaustive_extension(&g, &EdgeCosts::parse("0 1 2").unwrap()),
            Err(ExtendError::CostOnExistingEdge(0, 1))
        );
    }

    #[test]
    fn directed_rejected() {
        assert_eq!(exhaustive_extension(&Graph::new_directed(3), &unit()), Err(ExtendError::Directed));
    }

    #[test]
    fn tiny_budget_is_not_optimal_but_feasible() {
        // 8 isolated vertices: many twin pairs
        let g = Graph::new(8);
        let s = branch_and_bound_extension(&g, &unit(), 1).unwrap();
        assert!(!s.optimal);
        assert!(is_unn_naive(&s.apply(&g)).unwrap().is_unn);
    }
}
