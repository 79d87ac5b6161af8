//! Colorings of `D(P)`: properness, star/thrackle classes, the constructive
//! double-chain coloring and star-apex removal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::disjointness::{all_segments, build_graph, segment_count, SegmentId};
use crate::geometry::{self, PointSet};
use crate::graph::BitGraph;
use crate::{Error, Result};

/// Vertex coloring with contiguous color ids `0..color_count`. For `D(P)`
/// the vertex id is the segment rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    color_count: usize,
}

impl Coloring {
    /// Rejects labelings whose color ids are not exactly `0..max + 1`.
    pub fn new(colors: Vec<usize>) -> Result<Self> {
        let color_count = colors.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; color_count];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(gap) = used.iter().position(|u| !u) {
            return Err(Error::NonContiguousColors(format!("color {gap} unused below {color_count}")));
        }
        Ok(Self { colors, color_count })
    }

    /// Relabels arbitrary labels to `0..`, preserving their relative order.
    pub fn compacted(labels: &[usize]) -> Self {
        let mut distinct: Vec<usize> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let colors = labels.iter().map(|c| distinct.binary_search(c).unwrap()).collect();
        Self { colors, color_count: distinct.len() }
    }

    /// Relabels so classes are numbered by their smallest vertex.
    pub fn canonical(labels: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        let colors = labels
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        Self { colors, color_count: map.len() }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// Vertex ids of each class, indexed by color.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.color_count];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    /// Segments of each class of a coloring of `D(P)` with `n_points` points.
    pub fn segment_classes(&self, n_points: usize) -> Vec<Vec<SegmentId>> {
        self.classes()
            .into_iter()
            .map(|class| class.into_iter().map(|v| SegmentId::from_rank(v, n_points)).collect())
            .collect()
    }
}

/// Outcome of [`verify_coloring`]: every adjacent pair sharing a color.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<(usize, usize)>,
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_coloring(g: &BitGraph, c: &Coloring) -> Result<Verdict> {
    if c.vertex_count() != g.vertex_count() {
        return Err(Error::ColoringSizeMismatch { expected: g.vertex_count(), got: c.vertex_count() });
    }
    let violations = g.edges().filter(|&(u, v)| c.color(u) == c.color(v)).collect();
    Ok(Verdict { violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// All segments share the point `apex`. A single segment reports its
    /// smaller endpoint.
    Star { apex: usize },
    Thrackle,
}

impl ClassKind {
    pub fn is_star(self) -> bool {
        matches!(self, Self::Star { .. })
    }
}

pub fn classify_class(ps: &PointSet, class: &[SegmentId]) -> Result<ClassKind> {
    let (first, rest) = class.split_first().ok_or(Error::EmptyClass)?;
    for s in class {
        ps.check_index(s.j())?;
    }
    Ok(classify_segments(*first, rest))
}

fn classify_segments(first: SegmentId, rest: &[SegmentId]) -> ClassKind {
    [first.i(), first.j()]
        .into_iter()
        .find(|&p| rest.iter().all(|s| s.contains(p)))
        .map_or(ClassKind::Thrackle, |apex| ClassKind::Star { apex })
}

/// Kind of every class of a coloring of `D(P)`, indexed by color.
pub fn class_kinds(n_points: usize, c: &Coloring) -> Vec<ClassKind> {
    c.segment_classes(n_points)
        .iter()
        .map(|class| classify_segments(class[0], &class[1..]))
        .collect()
}

/// Sizes of the thrackle classes of a coloring of `D(P)`.
pub fn thrackle_sizes(n_points: usize, c: &Coloring) -> Vec<usize> {
    let kinds = class_kinds(n_points, c);
    c.classes()
        .iter()
        .zip(kinds)
        .filter(|(_, k)| *k == ClassKind::Thrackle)
        .map(|(class, _)| class.len())
        .collect()
}

/// Whether `k` thrackles on `n` convex points, `k = sizes.len()`, respect
/// the bound of at most `k·n - C(k, 2)` edges in total.
pub fn thrackle_edge_bound_ok(n: usize, thrackle_sizes: &[usize]) -> bool {
    let k = thrackle_sizes.len() as i128;
    let total: i128 = thrackle_sizes.iter().map(|&s| s as i128).sum();
    total <= k * n as i128 - k * (k - 1) / 2
}

/// Supplies a proper coloring of `D(C_l)` for the lower chain in
/// [`double_chain_coloring`]. The point set passed in has no partition.
pub trait ConvexProvider {
    fn color_convex(&self, ps: &PointSet) -> Result<Coloring>;
}

impl<F: Fn(&PointSet) -> Result<Coloring>> ConvexProvider for F {
    fn color_convex(&self, ps: &PointSet) -> Result<Coloring> {
        self(ps)
    }
}

/// Generates the canonical `C_{k,l}` and colors it with
/// [`double_chain_coloring`].
pub fn construct_double_chain_coloring(
    k: usize,
    l: usize,
    provider: &dyn ConvexProvider,
) -> Result<(PointSet, Coloring)> {
    if l < 3 {
        return Err(Error::InvalidParameters(format!("need l >= 3, got l = {l}")));
    }
    let ps = geometry::gen_double_chain(k, l)?;
    let c = double_chain_coloring(&ps, provider)?;
    Ok((ps, c))
}

/// Colors `D(C_{k,l})` with the provider's colors plus `k`: segments inside
/// `L` keep the provider's coloring of `D(L)`; then, for each `U` point from
/// left to right, all of its still uncolored segments get one new color.
pub fn double_chain_coloring(ps: &PointSet, provider: &dyn ConvexProvider) -> Result<Coloring> {
    let report = geometry::validate_double_chain(ps)?;
    if !report.is_valid() {
        return Err(Error::InvalidParameters("point set is not a valid double chain".into()));
    }
    if report.l < 3 || report.k > report.l {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= l and l >= 3, got k = {}, l = {}",
            report.k, report.l
        )));
    }
    let (upper, lower) = geometry::chains_by_x(ps)?;
    let n = ps.len();

    let lower_ps = ps.subset(&lower)?.without_partition();
    let lower_coloring = provider.color_convex(&lower_ps)?;
    let verdict = verify_coloring(build_graph(&lower_ps)?.graph(), &lower_coloring)?;
    if !verdict.is_proper() {
        return Err(Error::ImproperProvider(verdict.violations.len()));
    }

    let mut colors = vec![usize::MAX; segment_count(n)];
    for (v, s) in all_segments(lower.len()).enumerate() {
        colors[SegmentId::new(lower[s.i()], lower[s.j()]).rank(n)] = lower_coloring.color(v);
    }
    for (next, &u) in (lower_coloring.color_count()..).zip(&upper) {
        for q in (0..n).filter(|&q| q != u) {
            let slot = &mut colors[SegmentId::new(u, q).rank(n)];
            if *slot == usize::MAX {
                *slot = next;
            }
        }
    }
    Coloring::new(colors)
}

/// Deletes the apices of distinct star classes of `c`, returning the smaller
/// point set and the coloring induced on its segments (relabelled
/// contiguously, in the original color order).
pub fn remove_star_apices(ps: &PointSet, c: &Coloring, apices: &[usize]) -> Result<(PointSet, Coloring)> {
    let n = ps.len();
    if c.vertex_count() != segment_count(n) {
        return Err(Error::ColoringSizeMismatch { expected: segment_count(n), got: c.vertex_count() });
    }
    for (a, &v) in apices.iter().enumerate() {
        ps.check_index(v)?;
        if apices[..a].contains(&v) {
            return Err(Error::DuplicateApex(v));
        }
    }

    // Each apex needs its own star class; match apices to classes.
    let classes = c.segment_classes(n);
    let candidates: Vec<Vec<usize>> = apices
        .iter()
        .map(|&v| {
            (0..classes.len())
                .filter(|&col| !classes[col].is_empty() && classes[col].iter().all(|s| s.contains(v)))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; classes.len()];
    for (a, &v) in apices.iter().enumerate() {
        let mut seen = vec![false; classes.len()];
        if !augment(a, &candidates, &mut owner, &mut seen) {
            return Err(Error::NotAStarApex(v));
        }
    }

    let reduced = ps.remove_points(apices)?;
    let survivors: Vec<usize> = (0..n).filter(|p| !apices.contains(p)).collect();
    let labels: Vec<usize> = all_segments(survivors.len())
        .map(|s| c.color(SegmentId::new(survivors[s.i()], survivors[s.j()]).rank(n)))
        .collect();
    Ok((reduced, Coloring::compacted(&labels)))
}

fn augment(a: usize, candidates: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &col in &candidates[a] {
        if seen[col] {
            continue;
        }
        seen[col] = true;
        if owner[col].is_none_or(|b| augment(b, candidates, owner, seen)) {
            owner[col] = Some(a);
            return true;
        }
    }
    false
}
