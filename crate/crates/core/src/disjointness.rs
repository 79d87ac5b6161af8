//! The edge disjointness graph `D(P)` and convex hull edges.
//!
//! Vertex `v` of `D(P)` is the segment of lexicographic rank `v` among all
//! pairs `(i, j)`, `i < j`, of point indices.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::geometry::{self, orientation, Orientation, PointSet};
use crate::graph::BitGraph;
use crate::{Error, Result};

/// Unordered pair of point indices, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentId {
    i: usize,
    j: usize,
}

impl SegmentId {
    /// # Panics
    /// If `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("segment endpoints must differ")
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Ok(Self { i: a, j: b }),
            core::cmp::Ordering::Greater => Ok(Self { i: b, j: a }),
            core::cmp::Ordering::Equal => Err(Error::InvalidSegment(a, b)),
        }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn contains(self, p: usize) -> bool {
        self.i == p || self.j == p
    }

    pub fn shares_endpoint(self, other: Self) -> bool {
        other.contains(self.i) || other.contains(self.j)
    }

    /// Rank among all segments of an `n`-point set.
    pub fn rank(self, n: usize) -> usize {
        debug_assert!(self.j < n);
        self.i * (2 * n - self.i - 1) / 2 + (self.j - self.i - 1)
    }

    pub fn from_rank(rank: usize, n: usize) -> Self {
        let mut i = 0;
        let mut rest = rank;
        while rest >= n - i - 1 {
            rest -= n - i - 1;
            i += 1;
        }
        Self { i, j: i + 1 + rest }
    }
}

impl fmt::Display for SegmentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

pub const fn segment_count(n_points: usize) -> usize {
    n_points * n_points.saturating_sub(1) / 2
}

/// All segments of an `n`-point set in rank order.
pub fn all_segments(n_points: usize) -> impl Iterator<Item = SegmentId> {
    (0..n_points).flat_map(move |i| (i + 1..n_points).map(move |j| SegmentId { i, j }))
}

/// `D(P)`: one vertex per segment, adjacency between disjoint segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessGraph {
    n_points: usize,
    graph: BitGraph,
}

impl DisjointnessGraph {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn segment(&self, v: usize) -> SegmentId {
        SegmentId::from_rank(v, self.n_points)
    }

    pub fn vertex_of(&self, s: SegmentId) -> usize {
        s.rank(self.n_points)
    }

    pub fn segments(&self) -> impl Iterator<Item = SegmentId> {
        all_segments(self.n_points)
    }

    /// Rebuilds a graph from serialized data. The vertex count must equal
    /// `C(n_points, 2)`.
    pub fn from_edges(n_points: usize, vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let expected = segment_count(n_points);
        if vertices != expected {
            return Err(Error::InvalidGraph(format!(
                "{vertices} vertices, but {n_points} points span {expected} segments"
            )));
        }
        Ok(Self { n_points, graph: BitGraph::from_edges(vertices, edges)? })
    }
}

impl Deref for DisjointnessGraph {
    type Target = BitGraph;

    fn deref(&self) -> &BitGraph {
        &self.graph
    }
}

pub fn build_graph(ps: &PointSet) -> Result<DisjointnessGraph> {
    let n = ps.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    geometry::require_general_position(ps)?;
    let segs: Vec<SegmentId> = all_segments(n).collect();
    let pts = ps.points();
    let mut graph = BitGraph::empty(segs.len());
    for (u, a) in segs.iter().enumerate() {
        for (v, b) in segs.iter().enumerate().skip(u + 1) {
            if !a.shares_endpoint(*b)
                && !geometry::closed_segments_intersect(pts[a.i], pts[a.j], pts[b.i], pts[b.j])
            {
                graph.add_edge(u, v);
            }
        }
    }
    Ok(DisjointnessGraph { n_points: n, graph })
}

/// Convex hull vertices in counterclockwise order, starting from the
/// lowest-leftmost point.
pub fn convex_hull(ps: &PointSet) -> Result<Vec<usize>> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    geometry::require_general_position(ps)?;
    let p = ps.points();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (p[i].x, p[i].y));

    // Andrew's monotone chain.
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for pass in 0..2 {
        let start = hull.len();
        let iter: &mut dyn Iterator<Item = &usize> = if pass == 0 { &mut order.iter() } else { &mut order.iter().rev() };
        for &i in iter {
            while hull.len() >= start + 2
                && orientation(p[hull[hull.len() - 2]], p[hull[hull.len() - 1]], p[i]) != Orientation::CounterClockwise
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    Ok(hull)
}

/// Hull edges in counterclockwise order.
pub fn convex_hull_edges(ps: &PointSet) -> Result<Vec<SegmentId>> {
    let hull = convex_hull(ps)?;
    Ok((0..hull.len()).map(|a| SegmentId::new(hull[a], hull[(a + 1) % hull.len()])).collect())
}
