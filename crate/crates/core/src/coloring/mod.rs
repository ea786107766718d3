//! Conflict graphs of one-page layouts and exact `k`-colorability.
//!
//! The conflict graph of a layout has one vertex per edge of `K_{m,n}`
//! (vertex `i * n + j` for edge `(b_i, w_j)`), adjacent when the two chords
//! cross. A proper `k`-coloring is exactly a crossing-free `k`-page drawing
//! on that spine order, so `K_{m,n}` has positive `k`-page crossing number
//! iff no layout's conflict graph is `k`-colorable.

mod clique;
mod cnf;
mod dsatur;
mod verify;

use std::time::Duration;

pub use clique::{clique_lower_bound, maximum_clique};
pub use cnf::{export_cnf, parse_dimacs, solve_cnf, Cnf, SatResult};
pub use dsatur::is_k_colorable;
pub use verify::{
    verify_layouts, verify_positive_crossing, LayoutLog, LogSink, PipelineVerdict, VerifyOptions, VerifyReport,
};

use crate::drawings::{CircularLayout, Edge};

/// Simple undirected graph stored as bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    vertex_count: usize,
    words: usize,
    rows: Vec<u64>,
}

impl ConflictGraph {
    pub fn empty(vertex_count: usize) -> Self {
        let words = vertex_count.div_ceil(64).max(1);
        ConflictGraph { vertex_count, words, rows: vec![0; words * vertex_count] }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Self::empty(vertex_count);
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Loops and repeated pairs are ignored.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(vertex_count);
        for (u, v) in edges {
            assert!(u < vertex_count && v < vertex_count, "edge ({u}, {v}) out of range");
            if u != v {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertex_count && self.edges().all(|(u, v)| colors[u] != colors[v])
    }
}

pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i * 64 + b)
        })
    })
}

/// The conflict graph of the one-page drawing on `layout`.
pub fn conflict_graph(layout: &CircularLayout) -> ConflictGraph {
    let (m, n) = (layout.m(), layout.n());
    let mut g = ConflictGraph::empty(m * n);
    let edge = |idx: usize| Edge::new(idx / n, idx % n);
    for u in 0..m * n {
        for v in u + 1..m * n {
            if layout.chords_cross(edge(u), edge(v)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Search limits for a single colorability decision.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes, max_time: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 1_000_000_000, max_time: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A proper coloring, one colour in `0..k` per vertex.
    Colorable(Vec<usize>),
    /// The search space was exhausted.
    NotColorable,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct ColoringResult {
    pub verdict: Verdict,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_k22_layout_has_no_conflicts() {
        let g = conflict_graph(&CircularLayout::from_bitstring("1010").unwrap());
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn interleaved_k22_layout_has_one_conflict() {
        let g = conflict_graph(&CircularLayout::from_bitstring("1100").unwrap());
        // edges (b0,w0) = 0 and (b1,w1) = 3
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 3)]);
    }

    #[test]
    fn adjacent_edges_never_conflict() {
        let layout = CircularLayout::from_bitstring("1101001000").unwrap();
        let g = conflict_graph(&layout);
        let n = layout.n();
        for (u, v) in g.edges() {
            assert_ne!(u / n, v / n);
            assert_ne!(u % n, v % n);
        }
    }

    #[test]
    fn bitset_rows_beyond_one_word() {
        let g = ConflictGraph::from_edges(130, [(0, 129), (64, 65), (3, 3)]);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![65]);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn proper_coloring_check() {
        let g = ConflictGraph::complete(3);
        assert!(g.is_proper_coloring(&[0, 1, 2]));
        assert!(!g.is_proper_coloring(&[0, 1, 1]));
        assert!(!g.is_proper_coloring(&[0, 1]));
    }
}
