//! Immutable simple undirected graphs with bitset adjacency rows.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::{count_and, count_ones, words_for, Ones, VertexSet, WORD_BITS};
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Rows are stored back to back in one allocation; row `v` occupies
/// `words_per_row` words. The structure is never mutated after
/// construction, so it can be shared freely across worker threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

/// Result of [`Graph::induced_subgraph`]: vertex `i` of `graph` is vertex
/// `labels[i]` of the parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

impl Induced {
    /// Maps a set over the induced graph back to the parent's ground set.
    pub fn lift(&self, set: &VertexSet, parent_n: usize) -> VertexSet {
        let mut out = VertexSet::empty(parent_n);
        for v in set.iter() {
            out.insert(self.labels[v]);
        }
        out
    }
}

impl Graph {
    /// Builds the simple graph with exactly the given edges. Duplicate and
    /// reversed pairs collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            g.set_edge(u, v);
        }
        g.recount();
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; stride * n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    /// Edge setter used by builders inside the crate; callers must
    /// [`Graph::recount`] once done.
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.stride + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.rows[v * self.stride + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.stride + v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        self.rows[v * self.stride + u / WORD_BITS] &= !(1 << (u % WORD_BITS));
    }

    pub(crate) fn recount(&mut self) {
        self.edge_count = count_ones(&self.rows) / 2;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        count_ones(self.row(v))
    }

    /// Degree of `v` in `G[set]` (v itself need not belong to `set`).
    #[inline]
    pub fn degree_within(&self, v: usize, set: &VertexSet) -> usize {
        count_and(self.row(v), set.words())
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Maximum degree of the induced subgraph `G[set]`.
    pub fn max_degree_within(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.degree_within(v, set))
            .max()
            .unwrap_or(0)
    }

    /// Number of edges of `G[set]`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.degree_within(v, set))
            .sum::<usize>()
            / 2
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.ground_size() == self.n {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                expected: self.n,
                found: set.ground_size(),
            })
        }
    }

    /// Smallest edge `(u, v)`, `u < v`, with both endpoints in `set`.
    pub fn edge_within(&self, set: &VertexSet) -> Option<(usize, usize)> {
        set.iter().find_map(|u| {
            Ones::new(self.row(u))
                .find(|&v| v > u && set.contains(v))
                .map(|v| (u, v))
        })
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.degree_within(v, set) == 0)
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let k = set.len();
        set.iter().all(|v| self.degree_within(v, set) + 1 == k)
    }

    /// Errors with the smallest offending edge unless `set` is independent.
    pub fn require_independent(&self, set: &VertexSet) -> Result<()> {
        self.check_set(set)?;
        match self.edge_within(set) {
            None => Ok(()),
            Some((u, v)) => Err(Error::NotIndependent { u, v }),
        }
    }

    pub fn complement(&self) -> Graph {
        let mut out = Graph {
            n: self.n,
            stride: self.stride,
            rows: self.rows.iter().map(|w| !w).collect(),
            edge_count: 0,
        };
        let rem = self.n % WORD_BITS;
        for v in 0..self.n {
            let row = &mut out.rows[v * self.stride..(v + 1) * self.stride];
            if rem != 0 {
                row[self.stride - 1] &= (1u64 << rem) - 1;
            }
            row[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
        out.recount();
        out
    }

    /// `G[set]` with vertices relabeled `0..|set|` in ascending order of the
    /// original identifiers.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Induced {
        let labels = set.to_vec();
        let k = labels.len();
        let mut graph = Graph::empty(k);
        for (i, &u) in labels.iter().enumerate() {
            for (j, &v) in labels.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    graph.set_edge(i, j);
                }
            }
        }
        graph.recount();
        Induced { graph, labels }
    }

    /// Number of edges whose endpoints share a label, i.e. the
    /// monochromatic edges of a coloring or partition assignment.
    pub fn monochromatic_edges(&self, assignment: &[usize]) -> usize {
        assert_eq!(assignment.len(), self.n);
        self.edges()
            .filter(|&(u, v)| assignment[u] == assignment[v])
            .count()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edge_count", &self.edge_count)
            .finish()
    }
}
