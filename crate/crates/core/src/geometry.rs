//! Exact integer geometry: orientation, closed-segment intersection, point
//! set generators and the double-chain validator.
//!
//! Coordinates are `i32`; every determinant is evaluated in `i128`, so no
//! predicate can overflow.

use alloc::format;
use alloc::vec::Vec;

use crate::disjointness::SegmentId;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Self::Clockwise => Self::CounterClockwise,
            Self::CounterClockwise => Self::Clockwise,
            Self::Collinear => Self::Collinear,
        }
    }
}

/// Twice the signed area of the triangle `(p, q, r)`.
#[inline]
pub fn det(p: Point, q: Point, r: Point) -> i128 {
    let (px, py) = (i128::from(p.x), i128::from(p.y));
    (i128::from(q.x) - px) * (i128::from(r.y) - py) - (i128::from(q.y) - py) * (i128::from(r.x) - px)
}

#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match det(p, q, r).signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// `r` lies on the closed segment `pq`, given that the three are collinear.
fn on_collinear_segment(p: Point, q: Point, r: Point) -> bool {
    p.x.min(q.x) <= r.x && r.x <= p.x.max(q.x) && p.y.min(q.y) <= r.y && r.y <= p.y.max(q.y)
}

/// Whether the closed segments `ab` and `cd` share at least one point.
pub fn closed_segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = det(c, d, a).signum();
    let d2 = det(c, d, b).signum();
    let d3 = det(a, b, c).signum();
    let d4 = det(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_collinear_segment(c, d, a))
        || (d2 == 0 && on_collinear_segment(c, d, b))
        || (d3 == 0 && on_collinear_segment(a, b, c))
        || (d4 == 0 && on_collinear_segment(a, b, d))
}

/// U/L split of a double chain, as index lists into the owning point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

/// Distinct integer points, optionally split into an upper chain `U` and a
/// lower chain `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Point>,
    partition: Option<Partition>,
}

impl PointSet {
    pub fn new(points: Vec<Point>, partition: Option<Partition>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| points[i]);
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::DuplicatePoint(w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        if let Some(part) = &partition {
            let n = points.len();
            let mut seen = alloc::vec![false; n];
            for &i in part.upper.iter().chain(&part.lower) {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
                seen[i] = true;
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidPartition(format!("index {missing} is in neither U nor L")));
            }
        }
        Ok(Self { points, partition })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn without_partition(&self) -> Self {
        Self { points: self.points.clone(), partition: None }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// The points at `keep` (in the given order), with the partition
    /// restricted and renumbered accordingly.
    pub fn subset(&self, keep: &[usize]) -> Result<Self> {
        let mut new_index = alloc::vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            self.check_index(old)?;
            new_index[old] = new;
        }
        let points = keep.iter().map(|&i| self.points[i]).collect();
        let partition = self.partition.as_ref().map(|p| {
            let remap = |side: &[usize]| -> Vec<usize> {
                side.iter().map(|&i| new_index[i]).filter(|&i| i != usize::MAX).collect()
            };
            Partition { upper: remap(&p.upper), lower: remap(&p.lower) }
        });
        Self::new(points, partition)
    }

    /// The point set with the indices in `remove` deleted; survivors keep
    /// their relative order.
    pub fn remove_points(&self, remove: &[usize]) -> Result<Self> {
        for &i in remove {
            self.check_index(i)?;
        }
        let keep: Vec<usize> = (0..self.len()).filter(|i| !remove.contains(i)).collect();
        self.subset(&keep)
    }

    /// Sort key used for "left to right" along a chain.
    fn by_x(&self, idx: &[usize]) -> Vec<usize> {
        let mut v = idx.to_vec();
        v.sort_by_key(|&i| (self.points[i].x, self.points[i].y));
        v
    }
}

/// Whether the closed segments `a` and `b` of `ps` are disjoint.
pub fn segments_disjoint(a: SegmentId, b: SegmentId, ps: &PointSet) -> Result<bool> {
    if a == b {
        return Err(Error::SameSegment(a));
    }
    for i in [a.i(), a.j(), b.i(), b.j()] {
        ps.check_index(i)?;
    }
    if a.shares_endpoint(b) {
        return Ok(false);
    }
    let p = |i| ps.point(i);
    Ok(!closed_segments_intersect(p(a.i()), p(a.j()), p(b.i()), p(b.j())))
}

/// Whether two segments without a common endpoint meet.
pub fn segments_cross(a: SegmentId, b: SegmentId, ps: &PointSet) -> Result<bool> {
    if a.shares_endpoint(b) {
        return Ok(false);
    }
    Ok(!segments_disjoint(a, b, ps)?)
}

/// First collinear triple `(i, j, k)` with `i < j < k`, if any.
pub fn collinear_triple(ps: &PointSet) -> Option<[usize; 3]> {
    let p = ps.points();
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(p[i], p[j], p[k]) == Orientation::Collinear {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

pub fn is_general_position(ps: &PointSet) -> bool {
    collinear_triple(ps).is_none()
}

pub(crate) fn require_general_position(ps: &PointSet) -> Result<()> {
    match collinear_triple(ps) {
        Some([i, j, k]) => Err(Error::NotGeneralPosition(i, j, k)),
        None => Ok(()),
    }
}

/// `n` points `(i, i²)`, `i = 0..n`: convex and in general position.
pub fn gen_convex(n: usize) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParameters("convex set needs n >= 1".into()));
    }
    let points = (0..n)
        .map(|i| {
            let x = i32::try_from(i).ok()?;
            Some(Point::new(x, x.checked_mul(x)?))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidParameters(format!("n = {n} overflows i32 coordinates")))?;
    PointSet::new(points, None)
}

/// Cap on the number of `M` increments in [`gen_double_chain`].
pub const DOUBLE_CHAIN_SEARCH_CAP: u32 = 10_000;

/// `count` integers of the given parity, consecutive in steps of two and as
/// close to centred on zero as the parity allows.
fn centred_of_parity(count: usize, odd: bool) -> Vec<i64> {
    let count = count as i64;
    let start = -2 * (count / 2) + i64::from(odd);
    (0..count).map(|i| start + 2 * i).collect()
}

/// Canonical `(k, l)` double chain: `U` on `y = x² + M` at odd `x`, `L` on
/// `y = -x²` at even `x`. `U` takes indices `0..k` and `L` indices `k..k+l`,
/// each left to right.
pub fn gen_double_chain(k: usize, l: usize) -> Result<PointSet> {
    if k < 1 || k > l {
        return Err(Error::InvalidParameters(format!("double chain needs 1 <= k <= l, got k = {k}, l = {l}")));
    }
    let ux = centred_of_parity(k, true);
    let lx = centred_of_parity(l, false);

    // Smallest M putting every L point strictly below every U-line and
    // every U point strictly above every L-line. A U-line through u1, u2 is
    // y = (u1+u2)x - u1·u2 + M; an L-line through v1, v2 is
    // y = -(v1+v2)x + v1·v2.
    let mut need = 0i64;
    for (a, &u1) in ux.iter().enumerate() {
        for &u2 in &ux[a + 1..] {
            for &x in &lx {
                need = need.max(-x * x - (u1 + u2) * x + u1 * u2);
            }
        }
    }
    for (a, &v1) in lx.iter().enumerate() {
        for &v2 in &lx[a + 1..] {
            for &x in &ux {
                need = need.max(-x * x - (v1 + v2) * x + v1 * v2);
            }
        }
    }

    for m in (need + 1..).take(DOUBLE_CHAIN_SEARCH_CAP as usize + 1) {
        let ps = place_double_chain(&ux, &lx, m)?;
        if validate_double_chain(&ps)?.is_valid() {
            return Ok(ps);
        }
    }
    Err(Error::SearchExhausted(DOUBLE_CHAIN_SEARCH_CAP))
}

fn place_double_chain(ux: &[i64], lx: &[i64], m: i64) -> Result<PointSet> {
    let overflow = || Error::InvalidParameters("double chain coordinates overflow i32".into());
    let mut points = Vec::with_capacity(ux.len() + lx.len());
    for &x in ux {
        points.push((x, x * x + m));
    }
    for &x in lx {
        points.push((x, -x * x));
    }
    let points = points
        .into_iter()
        .map(|(x, y)| Ok(Point::new(i32::try_from(x).map_err(|_| overflow())?, i32::try_from(y).map_err(|_| overflow())?)))
        .collect::<Result<Vec<_>>>()?;
    let k = ux.len();
    let partition = Partition { upper: (0..k).collect(), lower: (k..k + lx.len()).collect() };
    PointSet::new(points, Some(partition))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `U` is a cup.
    UpperIsCup,
    /// `L` is a cap.
    LowerIsCap,
    /// Every `L` point is strictly below every line through two `U` points.
    LowerBelowUpperLines,
    /// Every `U` point is strictly above every line through two `L` points.
    UpperAboveLowerLines,
    GeneralPosition,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Self::UpperIsCup,
        Self::LowerIsCap,
        Self::LowerBelowUpperLines,
        Self::UpperAboveLowerLines,
        Self::GeneralPosition,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::UpperIsCup => "(a) U is a cup",
            Self::LowerIsCap => "(b) L is a cap",
            Self::LowerBelowUpperLines => "(c) L below every U-line",
            Self::UpperAboveLowerLines => "(d) U above every L-line",
            Self::GeneralPosition => "(e) general position",
        }
    }
}

/// Per-condition outcome of [`validate_double_chain`]; a failure carries a
/// witness triple of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub k: usize,
    pub l: usize,
    pub failures: [Option<[usize; 3]>; 5],
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.iter().all(Option::is_none)
    }

    pub fn witness(&self, c: Condition) -> Option<[usize; 3]> {
        let idx = Condition::ALL.iter().position(|&x| x == c).unwrap();
        self.failures[idx]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Condition, Option<[usize; 3]>)> + '_ {
        Condition::ALL.iter().copied().zip(self.failures.iter().copied())
    }
}

/// Consecutive triples of an x-sorted chain must all turn the same way.
fn chain_turn_failure(ps: &PointSet, chain: &[usize], want: Orientation) -> Option<[usize; 3]> {
    chain
        .windows(3)
        .find(|w| orientation(ps.point(w[0]), ps.point(w[1]), ps.point(w[2])) != want)
        .map(|w| [w[0], w[1], w[2]])
}

/// Every point of `others` must lie on the `want` side of every line through
/// two points of `chain`, each line directed left to right.
fn side_failure(ps: &PointSet, chain: &[usize], others: &[usize], want: Orientation) -> Option<[usize; 3]> {
    for (a, &p) in chain.iter().enumerate() {
        for &q in &chain[a + 1..] {
            for &r in others {
                if orientation(ps.point(p), ps.point(q), ps.point(r)) != want {
                    return Some([p, q, r]);
                }
            }
        }
    }
    None
}

pub fn validate_double_chain(ps: &PointSet) -> Result<ValidationReport> {
    let part = ps.partition().ok_or(Error::MissingPartition)?;
    if part.upper.is_empty() || part.lower.is_empty() {
        return Err(Error::InvalidPartition("a double chain needs non-empty U and L".into()));
    }
    let upper = ps.by_x(&part.upper);
    let lower = ps.by_x(&part.lower);
    Ok(ValidationReport {
        k: upper.len(),
        l: lower.len(),
        failures: [
            chain_turn_failure(ps, &upper, Orientation::CounterClockwise),
            chain_turn_failure(ps, &lower, Orientation::Clockwise),
            side_failure(ps, &upper, &lower, Orientation::Clockwise),
            side_failure(ps, &lower, &upper, Orientation::CounterClockwise),
            collinear_triple(ps),
        ],
    })
}

/// Edges of the convex hull of one chain (`U` or `L`), left to right along
/// the chain followed by the chord joining its two extremes.
pub fn chain_hull_segments(ps: &PointSet, chain: &[usize]) -> Vec<SegmentId> {
    let sorted = ps.by_x(chain);
    let mut out: Vec<SegmentId> = sorted.windows(2).map(|w| SegmentId::new(w[0], w[1])).collect();
    if sorted.len() >= 3 {
        out.push(SegmentId::new(sorted[0], sorted[sorted.len() - 1]));
    }
    out
}

/// Points of a double chain in `U` then `L`, each sorted left to right.
pub fn chains_by_x(ps: &PointSet) -> Result<(Vec<usize>, Vec<usize>)> {
    let part = ps.partition().ok_or(Error::MissingPartition)?;
    Ok((ps.by_x(&part.upper), ps.by_x(&part.lower)))
}
