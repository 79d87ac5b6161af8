use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{chromatic_number_exact, Budget};
use crate::coloring::{class_kinds, thrackle_edge_bound_ok, thrackle_sizes, Coloring};
use crate::disjointness::build_graph;
use crate::geometry::gen_convex;
use crate::graph::BitGraph;
use crate::{Error, Result};

/// Calls `visit` once for every proper coloring of `g` with exactly `chi`
/// colors, up to renaming colors. Each coloring is emitted in canonical form:
/// classes numbered by their smallest vertex. Returns the number visited.
///
/// Errors with [`Error::ChiTooSmall`] if there is none, which certifies
/// `chi < χ(g)` when `chi` is at most the number of vertices.
pub fn for_each_optimal_coloring<F>(g: &BitGraph, chi: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    let m = g.vertex_count();
    let mut e = Enumerator {
        g,
        chi,
        color: vec![usize::MAX; m],
        blocked: vec![0; m * chi],
        count: 0,
    };
    let _ = e.extend(0, 0, &mut visit);
    if e.count == 0 {
        return Err(Error::ChiTooSmall(chi));
    }
    Ok(e.count)
}

/// Collects [`for_each_optimal_coloring`]; only for small graphs.
pub fn enumerate_optimal_colorings(g: &BitGraph, chi: usize) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    for_each_optimal_coloring(g, chi, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct Enumerator<'g> {
    g: &'g BitGraph,
    chi: usize,
    color: Vec<usize>,
    /// Colored neighbors of `v` with color `c`, at `v * chi + c`.
    blocked: Vec<u32>,
    count: u64,
}

impl Enumerator<'_> {
    // Vertices are colored in id order, so the first vertex of each class
    // opens it: this is exactly the canonical labelling.
    fn extend<F>(&mut self, v: usize, used: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Coloring) -> ControlFlow<()>,
    {
        let m = self.color.len();
        if m - v < self.chi - used {
            return ControlFlow::Continue(());
        }
        if v == m {
            self.count += 1;
            return visit(&Coloring::new(self.color.clone()).expect("canonical labels are contiguous"));
        }
        for c in 0..(used + 1).min(self.chi) {
            if self.blocked[v * self.chi + c] != 0 {
                continue;
            }
            self.color[v] = c;
            let mut dead = false;
            for w in self.g.neighbors(v).iter().filter(|&w| w > v) {
                let slot = &mut self.blocked[w * self.chi + c];
                *slot += 1;
                // A later vertex with every color blocked cannot be colored.
                if *slot == 1 && (0..self.chi).all(|d| self.blocked[w * self.chi + d] != 0) {
                    dead = true;
                }
            }
            let flow = if dead { ControlFlow::Continue(()) } else { self.extend(v + 1, used.max(c + 1), visit) };
            for w in self.g.neighbors(v).iter().filter(|&w| w > v) {
                self.blocked[w * self.chi + c] -= 1;
            }
            self.color[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Largest `n` accepted by [`prop4_check`]. The exhaustive enumeration grows
/// very quickly with `n`; this is a resource limit only.
pub const PROP4_MAX_N: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop4Report {
    pub n: usize,
    pub chi: usize,
    /// Optimal colorings up to color permutation.
    pub colorings: u64,
    /// Largest number of single-segment classes seen in one coloring.
    pub max_singleton_classes: usize,
    /// Colorings with more than one single-segment class.
    pub offending: u64,
    /// Colorings whose thrackle classes exceed `k·n - C(k, 2)` edges.
    pub thrackle_bound_failures: u64,
}

impl Prop4Report {
    pub fn holds(&self) -> bool {
        self.offending == 0
    }
}

/// Enumerates every optimal coloring of `D(C_n)` and checks that none has
/// two classes consisting of a single segment.
pub fn prop4_check(n: usize) -> Result<Prop4Report> {
    if n < 4 {
        return Err(Error::InvalidParameters(alloc::format!("need n >= 4, got {n}")));
    }
    if n > PROP4_MAX_N {
        return Err(Error::AboveCap { n, cap: PROP4_MAX_N });
    }
    let g = build_graph(&gen_convex(n)?)?;
    let chi = chromatic_number_exact(&g, Budget::UNLIMITED)
        .exact()
        .ok_or(Error::BudgetExhausted)?
        .chi;
    let mut report = Prop4Report {
        n,
        chi,
        colorings: 0,
        max_singleton_classes: 0,
        offending: 0,
        thrackle_bound_failures: 0,
    };
    report.colorings = for_each_optimal_coloring(&g, chi, |c| {
        let singletons = c.classes().iter().filter(|class| class.len() == 1).count();
        report.max_singleton_classes = report.max_singleton_classes.max(singletons);
        if singletons > 1 {
            report.offending += 1;
        }
        if !thrackle_edge_bound_ok(n, &thrackle_sizes(n, c)) {
            report.thrackle_bound_failures += 1;
        }
        debug_assert_eq!(class_kinds(n, c).len(), chi);
        ControlFlow::Continue(())
    })?;
    Ok(report)
}
