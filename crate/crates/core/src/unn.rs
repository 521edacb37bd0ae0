//! Unique-neighborhood tests.
//!
//! A graph is a UNN when `v -> nb(v)` is injective. Two independent
//! deciders are provided: sorting neighbor-set fingerprints, and the
//! matrix condition `A*1 + I - A*A^T >= 1` (entrywise) evaluated in exact
//! integers. Row `i` of `A*A^T` holds the overlaps `x_i . x_j`, which never
//! exceed `x_i . x_i` and reach it only when rows `i` and `j` coincide.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{AdjacencyMatrix, Direction, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnnError {
    #[error("graph is directed; use the directed test with an explicit side")]
    Directed,
    #[error("adjacency matrix is not symmetric; use the directed test")]
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnnVerdict {
    pub is_unn: bool,
    /// Lexicographically smallest pair `(u, v)`, `u < v`, with `nb(u) = nb(v)`.
    pub witness: Option<(Vertex, Vertex)>,
}

impl UnnVerdict {
    fn from_witness(witness: Option<(Vertex, Vertex)>) -> Self {
        UnnVerdict { is_unn: witness.is_none(), witness }
    }
}

/// Fingerprint-sorting test on an undirected graph.
pub fn is_unn_naive(g: &Graph) -> Result<UnnVerdict, UnnError> {
    if g.is_directed() {
        return Err(UnnError::Directed);
    }
    Ok(UnnVerdict::from_witness(twin_by_sorting(g, Direction::Out)))
}

/// Fingerprint-sorting test on a directed graph (or either side of an
/// undirected one).
pub fn is_unn_naive_directed(g: &Graph, side: Direction) -> UnnVerdict {
    UnnVerdict::from_witness(twin_by_sorting(g, side))
}

fn twin_by_sorting(g: &Graph, side: Direction) -> Option<(Vertex, Vertex)> {
    let nbs: Vec<&BTreeSet<Vertex>> = (0..g.n())
        .map(|v| match side {
            Direction::Out => g.neighbors(v),
            Direction::In => g.in_neighbors(v),
        })
        .collect();
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by(|&a, &b| nbs[a].cmp(nbs[b]).then(a.cmp(&b)));
    // Ids ascend within a class of equal neighborhoods, so each class's
    // smallest pair is its first two members.
    let mut best: Option<(Vertex, Vertex)> = None;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && nbs[order[j]] == nbs[order[i]] {
            j += 1;
        }
        if j - i >= 2 {
            let pair = (order[i], order[i + 1]);
            best = Some(best.map_or(pair, |b| b.min(pair)));
        }
        i = j;
    }
    best
}

/// The integer matrix `L = A*1 + I - A*A^T`: entry `(i, j)` is the size of
/// row `i` minus the overlap of rows `i` and `j`, plus 1 on the diagonal.
///
/// `L[i][j] < 1` for `i != j` means row `i` is contained in row `j`, which
/// is weaker than equality. `L` is not symmetric in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl ConditionMatrix {
    /// Builds `L` from the rows of `a`.
    pub fn of_rows(a: &AdjacencyMatrix) -> Self {
        let n = a.n();
        let row_sums: Vec<i64> = (0..n).map(|i| a.row(i).iter().map(|&x| i64::from(x)).sum()).collect();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            let xi = a.row(i);
            for j in 0..n {
                let overlap: i64 = xi.iter().zip(a.row(j)).map(|(&p, &q)| i64::from(p & q)).sum();
                entries[i * n + j] = row_sums[i] + i64::from(i == j) - overlap;
            }
        }
        ConditionMatrix { n, entries }
    }

    /// `L + L^T - I`. Off the diagonal this is the Hamming distance between
    /// rows `i` and `j`, so it is `>= 1` everywhere iff the rows are
    /// pairwise distinct.
    pub fn distance_of_rows(a: &AdjacencyMatrix) -> Self {
        let l = ConditionMatrix::of_rows(a);
        let n = l.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = l.get(i, j) + l.get(j, i) - i64::from(i == j);
            }
        }
        ConditionMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// First `(i, j)` in row-major order with `L[i][j] < 1`, over every
    /// entry including the diagonal.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) < 1)
    }

    /// Same as [`first_violation`](Self::first_violation) restricted to
    /// `i < j`. Agrees with the full scan only on symmetric matrices.
    pub fn first_violation_upper(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) < 1)
    }
}

/// The matrix inequality `A*1 + I - A^2 >= 1` on an undirected graph.
///
/// Satisfying it implies the graph is a UNN, but not conversely: it also
/// fails when one neighborhood is a proper subset of another (the path
/// `0-1-2-3` fails at `(0, 2)`). The witness `(i, j)` is the first
/// violating entry in row-major order and satisfies `nb(i) ⊆ nb(j)`.
/// Use [`is_unn_distance`] for an exact matrix test.
pub fn is_unn_algebraic(a: &AdjacencyMatrix) -> Result<UnnVerdict, UnnError> {
    if !a.is_symmetric() {
        return Err(UnnError::Asymmetric);
    }
    Ok(UnnVerdict::from_witness(ConditionMatrix::of_rows(a).first_violation()))
}

/// Directed form of [`is_unn_algebraic`]: `Out` uses `A*1 + I - A*A^T`,
/// `In` uses `A^T*1 + I - A^T*A`. Same one-sidedness caveat.
pub fn is_unn_directed(a: &AdjacencyMatrix, side: Direction) -> UnnVerdict {
    let l = match side {
        Direction::Out => ConditionMatrix::of_rows(a),
        Direction::In => ConditionMatrix::of_rows(&a.transpose()),
    };
    UnnVerdict::from_witness(l.first_violation())
}

/// Exact matrix test: rows (`Out`) or columns (`In`) of `a` are pairwise
/// distinct iff `L + L^T - I >= 1`. The witness is the lexicographically
/// smallest twin pair, as in [`is_unn_naive`].
pub fn is_unn_distance(a: &AdjacencyMatrix, side: Direction) -> UnnVerdict {
    let d = match side {
        Direction::Out => ConditionMatrix::distance_of_rows(a),
        Direction::In => ConditionMatrix::distance_of_rows(&a.transpose()),
    };
    UnnVerdict::from_witness(d.first_violation_upper())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k22() -> Graph {
        Graph::complete_bipartite(2, 2)
    }

    #[test]
    fn naive_examples() {
        assert_eq!(is_unn_naive(&Graph::path(4)).unwrap(), UnnVerdict { is_unn: true, witness: None });
        assert!(is_unn_naive(&Graph::complete(4)).unwrap().is_unn);
        assert_eq!(is_unn_naive(&k22()).unwrap(), UnnVerdict { is_unn: false, witness: Some((0, 1)) });
        assert_eq!(is_unn_naive(&Graph::new_directed(2)), Err(UnnError::Directed));
    }

    #[test]
    fn naive_witness_is_smallest_pair() {
        // twins {1,4} with nb {0}, and {2,3} with nb {5}
        let g = Graph::from_edges(6, false, [(0, 1), (0, 4), (5, 2), (5, 3)]).unwrap();
        assert_eq!(is_unn_naive(&g).unwrap().witness, Some((1, 4)));
        // three isolated vertices
        assert_eq!(is_unn_naive(&Graph::new(3)).unwrap().witness, Some((0, 1)));
        // twin class {3,5,6}; smallest pair (3,5), ahead of (4,7)
        let g = Graph::from_edges(8, false, [(0, 3), (0, 5), (0, 6), (1, 4), (1, 7)]).unwrap();
        assert_eq!(is_unn_naive(&g).unwrap().witness, Some((3, 5)));
    }

    #[test]
    fn algebraic_examples() {
        let k2 = Graph::complete(2).adjacency_matrix();
        let l = ConditionMatrix::of_rows(&k2);
        assert_eq!((l.get(0, 0), l.get(0, 1), l.get(1, 0), l.get(1, 1)), (1, 1, 1, 1));
        assert!(is_unn_algebraic(&k2).unwrap().is_unn);

        let a = k22().adjacency_matrix();
        assert_eq!(ConditionMatrix::of_rows(&a).get(0, 1), 0);
        assert_eq!(is_unn_algebraic(&a).unwrap(), UnnVerdict { is_unn: false, witness: Some((0, 1)) });

        let single = Graph::new(1).adjacency_matrix();
        assert_eq!(ConditionMatrix::of_rows(&single).get(0, 0), 1);
        assert!(is_unn_algebraic(&single).unwrap().is_unn);

        let asym = AdjacencyMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(is_unn_algebraic(&asym), Err(UnnError::Asymmetric));
    }

    #[test]
    fn directed_examples() {
        let two_cycle = Graph::from_edges(2, true, [(0, 1), (1, 0)]).unwrap().adjacency_matrix();
        assert!(is_unn_directed(&two_cycle, Direction::Out).is_unn);

        let sink = Graph::from_edges(3, true, [(0, 2), (1, 2)]).unwrap().adjacency_matrix();
        assert_eq!(is_unn_directed(&sink, Direction::Out).witness, Some((0, 1)));
        assert_eq!(is_unn_directed(&sink, Direction::In).witness, Some((0, 1)));
    }

    #[test]
    fn containment_breaks_the_inequality() {
        // nb(0) = {1} is inside nb(2) = {1, 3}
        let line = Graph::path(4).adjacency_matrix();
        let l = ConditionMatrix::of_rows(&line);
        assert_eq!((l.get(0, 2), l.get(2, 0)), (0, 1));
        assert!(!l.is_symmetric());
        assert_eq!(is_unn_algebraic(&line).unwrap().witness, Some((0, 2)));
        assert!(is_unn_distance(&line, Direction::Out).is_unn);

        // an isolated vertex is contained in everything; the upper scan misses it
        let g = Graph::from_edges(3, false, [(0, 1)]).unwrap().adjacency_matrix();
        let l = ConditionMatrix::of_rows(&g);
        assert_eq!(l.first_violation(), Some((2, 0)));
        assert_eq!(l.first_violation_upper(), None);
    }

    #[test]
    fn distance_matches_naive() {
        for g in [Graph::path(4), k22(), Graph::complete(4), Graph::star(3), Graph::new(3), Graph::new(1)] {
            let a = g.adjacency_matrix();
            let d = ConditionMatrix::distance_of_rows(&a);
            assert!(d.is_symmetric());
            assert_eq!(is_unn_distance(&a, Direction::Out), is_unn_naive(&g).unwrap());
            assert_eq!(is_unn_distance(&a, Direction::In), is_unn_naive(&g).unwrap());
        }
        let sink = Graph::from_edges(3, true, [(0, 2), (1, 2)]).unwrap();
        for side in [Direction::Out, Direction::In] {
            assert_eq!(is_unn_distance(&sink.adjacency_matrix(), side), is_unn_naive_directed(&sink, side));
        }
    }

    #[test]
    fn directed_sides_agree_on_symmetric_input() {
        for g in [Graph::path(5), k22(), Graph::complete(4), Graph::star(3)] {
            let a = g.adjacency_matrix();
            let undirected = is_unn_algebraic(&a).unwrap();
            assert_eq!(is_unn_directed(&a, Direction::Out), undirected);
            assert_eq!(is_unn_directed(&a, Direction::In), undirected);
        }
    }
}
