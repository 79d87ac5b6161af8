use alloc::vec;
use alloc::vec::Vec;

use super::{clique_lower, dsatur_upper};
use crate::coloring::{verify_coloring, Coloring, ConvexProvider};
use crate::disjointness::build_graph;
use crate::geometry::PointSet;
use crate::graph::BitGraph;
use crate::{Error, Result};

/// Search limits. An exhausted budget yields [`ChiOutcome::Indeterminate`],
/// never a guessed value.
#[derive(Clone, Copy, Default)]
pub struct Budget<'a> {
    pub node_limit: Option<u64>,
    /// Polled every few thousand nodes; returning `true` stops the search.
    pub interrupt: Option<&'a dyn Fn() -> bool>,
}

impl Budget<'_> {
    pub const UNLIMITED: Budget<'static> = Budget { node_limit: None, interrupt: None };

    pub fn nodes(limit: u64) -> Budget<'static> {
        Budget { node_limit: Some(limit), interrupt: None }
    }
}

impl core::fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Budget")
            .field("node_limit", &self.node_limit)
            .field("interrupt", &self.interrupt.is_some())
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiResult {
    pub chi: usize,
    /// Proper coloring with exactly `chi` colors.
    pub witness: Coloring,
    /// Search nodes over all decision rounds.
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiOutcome {
    Exact(ChiResult),
    /// Budget ran out; `lower <= χ <= upper` and `best` uses `upper` colors.
    Indeterminate { lower: usize, upper: usize, best: Coloring, nodes: u64 },
}

impl ChiOutcome {
    pub fn exact(self) -> Option<ChiResult> {
        match self {
            Self::Exact(r) => Some(r),
            Self::Indeterminate { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Self::Exact(r) => r.nodes,
            Self::Indeterminate { nodes, .. } => *nodes,
        }
    }
}

/// Exact chromatic number with a witness coloring.
///
/// Deterministic: the clique seed, the DSATUR seed and every branching
/// decision break ties by smallest vertex id.
pub fn chromatic_number_exact(g: &BitGraph, budget: Budget<'_>) -> ChiOutcome {
    let m = g.vertex_count();
    if m == 0 {
        let witness = Coloring::new(Vec::new()).unwrap();
        return ChiOutcome::Exact(ChiResult { chi: 0, witness, nodes: 0 });
    }
    let (lower, clique) = clique_lower(g);
    let mut best = dsatur_upper(g);
    let mut search = Search::new(g, &clique, budget);

    // Decide k-colorability for k = upper - 1, upper - 2, ... until a round
    // fails; every success may drop the upper bound further.
    while best.color_count() > lower {
        let k = best.color_count() - 1;
        match search.decide(k) {
            Decision::Colorable(c) => best = c,
            Decision::NotColorable => break,
            Decision::Aborted => {
                return ChiOutcome::Indeterminate {
                    lower,
                    upper: best.color_count(),
                    best,
                    nodes: search.nodes,
                };
            }
        }
    }
    debug_assert!(verify_coloring(g, &best).unwrap().is_proper());
    ChiOutcome::Exact(ChiResult { chi: best.color_count(), witness: best, nodes: search.nodes })
}

/// Builds `D(P)` and solves it.
pub fn chromatic_number_of_points(ps: &PointSet, budget: Budget<'_>) -> Result<ChiOutcome> {
    Ok(chromatic_number_exact(build_graph(ps)?.graph(), budget))
}

/// [`ConvexProvider`] backed by the exact solver; optimal but only practical
/// for small point sets.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactProvider {
    pub node_limit: Option<u64>,
}

impl ConvexProvider for ExactProvider {
    fn color_convex(&self, ps: &PointSet) -> Result<Coloring> {
        let budget = Budget { node_limit: self.node_limit, interrupt: None };
        chromatic_number_of_points(ps, budget)?
            .exact()
            .map(|r| r.witness)
            .ok_or(Error::BudgetExhausted)
    }
}

enum Decision {
    Colorable(Coloring),
    NotColorable,
    Aborted,
}

const UNCOLORED: usize = usize::MAX;

struct Search<'g, 'b> {
    g: &'g BitGraph,
    clique: &'g [usize],
    budget: Budget<'b>,
    nodes: u64,
    // Per-round state.
    k: usize,
    color: Vec<usize>,
    /// `blocked[v * k + c]`: colored neighbors of `v` with color `c`.
    blocked: Vec<u32>,
    /// Colors still available to each vertex.
    avail: Vec<usize>,
    uncolored_degree: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
}

impl<'g, 'b> Search<'g, 'b> {
    fn new(g: &'g BitGraph, clique: &'g [usize], budget: Budget<'b>) -> Self {
        let neighbors = (0..g.vertex_count()).map(|v| g.neighbors(v).iter().collect()).collect();
        Self {
            g,
            clique,
            budget,
            nodes: 0,
            k: 0,
            color: Vec::new(),
            blocked: Vec::new(),
            avail: Vec::new(),
            uncolored_degree: Vec::new(),
            neighbors,
        }
    }

    fn decide(&mut self, k: usize) -> Decision {
        let m = self.g.vertex_count();
        if k < self.clique.len() {
            return Decision::NotColorable;
        }
        self.k = k;
        self.color = vec![UNCOLORED; m];
        self.blocked = vec![0; m * k];
        self.avail = vec![k; m];
        self.uncolored_degree = (0..m).map(|v| self.neighbors[v].len()).collect();

        // A clique takes distinct colors in every coloring, so fix them.
        for (c, &v) in self.clique.iter().enumerate() {
            if !self.assign(v, c) {
                return Decision::NotColorable;
            }
        }
        match self.extend(self.clique.len(), m - self.clique.len()) {
            Some(true) => Decision::Colorable(Coloring::compacted(&self.color)),
            Some(false) => Decision::NotColorable,
            None => Decision::Aborted,
        }
    }

    /// Colors `v` with `c` and updates neighbors; returns `false` (with the
    /// assignment still applied) if some uncolored neighbor runs out of colors.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        let k = self.k;
        let mut ok = true;
        for idx in 0..self.neighbors[v].len() {
            let w = self.neighbors[v][idx];
            self.uncolored_degree[w] -= 1;
            if self.color[w] != UNCOLORED {
                continue;
            }
            let slot = &mut self.blocked[w * k + c];
            *slot += 1;
            if *slot == 1 {
                self.avail[w] -= 1;
                if self.avail[w] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        let k = self.k;
        for idx in 0..self.neighbors[v].len() {
            let w = self.neighbors[v][idx];
            self.uncolored_degree[w] += 1;
            if self.color[w] != UNCOLORED {
                continue;
            }
            let slot = &mut self.blocked[w * k + c];
            *slot -= 1;
            if *slot == 0 {
                self.avail[w] += 1;
            }
        }
        self.color[v] = UNCOLORED;
    }

    /// Uncolored vertex with the fewest available colors, then the most
    /// uncolored neighbors, then the smallest id.
    fn select(&self) -> usize {
        let mut best = UNCOLORED;
        for v in 0..self.color.len() {
            if self.color[v] != UNCOLORED {
                continue;
            }
            if best == UNCOLORED
                || self.avail[v] < self.avail[best]
                || (self.avail[v] == self.avail[best] && self.uncolored_degree[v] > self.uncolored_degree[best])
            {
                best = v;
            }
        }
        best
    }

    fn out_of_budget(&self) -> bool {
        if self.budget.node_limit.is_some_and(|limit| self.nodes > limit) {
            return true;
        }
        self.nodes % 4096 == 0 && self.budget.interrupt.is_some_and(|stop| stop())
    }

    /// `Some(true)` when all vertices got colored, `None` on budget exhaustion.
    fn extend(&mut self, used: usize, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.out_of_budget() {
            return None;
        }
        let v = self.select();
        // Colors >= `used` are interchangeable: try only the first of them.
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.blocked[v * self.k + c] != 0 {
                continue;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.extend(used.max(c + 1), remaining - 1) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
            }
            self.unassign(v, c);
        }
        Some(false)
    }
}
