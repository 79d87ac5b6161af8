//! Simple undirected graph over vertices `0..n` with dense bit rows.

use alloc::format;
use alloc::vec::Vec;

use crate::{BitSet, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn empty(n: usize) -> Self {
        Self { rows: (0..n).map(|_| BitSet::new(n)).collect() }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if g.adjacent(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Subgraph induced by `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self::empty(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}
