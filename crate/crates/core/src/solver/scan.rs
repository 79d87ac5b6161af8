use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{chromatic_number_of_points, Budget, ChiOutcome};
use crate::formulas::{f_of, theorem_value};
use crate::geometry::{gen_double_chain, orientation, validate_double_chain, Orientation, Point, PointSet};
use crate::{Error, Result};

/// Random points are drawn uniformly from `[0, COORD_BOX]²`.
pub const COORD_BOX: i32 = 10_000;

/// Draws per point before sampling gives up.
const MAX_DRAWS_PER_POINT: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Uniform points in general position.
    Random,
    /// Random strictly convex chains; `χ` must equal `f(n)`.
    Convex,
    /// Randomly sheared double chains with `k` upper points; `χ` must equal
    /// `k + f(n - k)`.
    DoubleChain { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSample {
    pub trial: usize,
    pub points: PointSet,
    pub chi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub n: usize,
    pub mode: ScanMode,
    pub seed: u64,
    pub trials: usize,
    /// Conjectured lower bound `f(n)`.
    pub f_n: usize,
    /// Exact value the forced modes must hit.
    pub expected: Option<usize>,
    pub solved: usize,
    pub min_chi: Option<usize>,
    pub max_chi: Option<usize>,
    /// Samples with `χ < f(n)`.
    pub counterexamples: Vec<ScanSample>,
    /// Forced-mode samples whose `χ` differs from `expected`.
    pub mismatches: Vec<ScanSample>,
    pub indeterminate: usize,
    /// Trials where rejection sampling ran out of draws.
    pub sampling_failures: usize,
}

impl ScanReport {
    pub fn confirmed(&self) -> bool {
        self.counterexamples.is_empty() && self.mismatches.is_empty()
    }
}

/// Samples `trials` point sets of size `n` (seeded, reproducible), computes
/// the exact `χ(D(P))` of each and reports every sample below `f(n)`.
pub fn conjecture_scan(n: usize, trials: usize, seed: u64, mode: ScanMode, budget: Budget<'_>) -> Result<ScanReport> {
    if !(4..=8).contains(&n) {
        return Err(Error::InvalidParameters(format!("scan needs 4 <= n <= 8, got {n}")));
    }
    let f_n = f_of(n as u64)? as usize;
    let expected = match mode {
        ScanMode::Random => None,
        ScanMode::Convex => Some(f_n),
        ScanMode::DoubleChain { k } => {
            if k == 0 || 2 * k > n || n - k < 3 {
                return Err(Error::InvalidParameters(format!("no double chain with k = {k} and n = {n}")));
            }
            Some(theorem_value(k as u64, (n - k) as u64)? as usize)
        }
    };
    let mut report = ScanReport {
        n,
        mode,
        seed,
        trials,
        f_n,
        expected,
        solved: 0,
        min_chi: None,
        max_chi: None,
        counterexamples: Vec::new(),
        mismatches: Vec::new(),
        indeterminate: 0,
        sampling_failures: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let sample = match mode {
            ScanMode::Random => random_general_position(n, &mut rng),
            ScanMode::Convex => Some(random_convex_chain(n, &mut rng)?),
            ScanMode::DoubleChain { k } => Some(random_double_chain(k, n - k, &mut rng)?),
        };
        let Some(points) = sample else {
            report.sampling_failures += 1;
            continue;
        };
        let chi = match chromatic_number_of_points(&points, budget)? {
            ChiOutcome::Exact(r) => r.chi,
            ChiOutcome::Indeterminate { .. } => {
                report.indeterminate += 1;
                continue;
            }
        };
        report.solved += 1;
        report.min_chi = Some(report.min_chi.map_or(chi, |m| m.min(chi)));
        report.max_chi = Some(report.max_chi.map_or(chi, |m| m.max(chi)));
        if chi < f_n {
            report.counterexamples.push(ScanSample { trial, points: points.clone(), chi });
        }
        if expected.is_some_and(|e| e != chi) {
            report.mismatches.push(ScanSample { trial, points, chi });
        }
    }
    Ok(report)
}

/// `n` distinct points in `[0, COORD_BOX]²`, no three collinear, by
/// incremental rejection sampling. `None` if some point needed more than
/// the per-point draw limit.
pub fn random_general_position<R: Rng>(n: usize, rng: &mut R) -> Option<PointSet> {
    let mut points: Vec<Point> = Vec::with_capacity(n);
    while points.len() < n {
        let fresh = (0..MAX_DRAWS_PER_POINT).find_map(|_| {
            let p = Point::new(rng.random_range(0..=COORD_BOX), rng.random_range(0..=COORD_BOX));
            let clash = points.iter().enumerate().any(|(a, &q)| {
                q == p
                    || points[a + 1..]
                        .iter()
                        .any(|&r| orientation(q, r, p) == Orientation::Collinear)
            });
            (!clash).then_some(p)
        })?;
        points.push(fresh);
    }
    PointSet::new(points, None).ok()
}

/// Strictly convex x-monotone chain with random gaps and strictly increasing
/// random slopes; every such chain is in convex and general position.
fn random_convex_chain<R: Rng>(n: usize, rng: &mut R) -> Result<PointSet> {
    let mut slopes: Vec<i32> = Vec::with_capacity(n);
    while slopes.len() < n - 1 {
        let s = rng.random_range(-40..=40);
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    slopes.sort_unstable();
    let mut p = Point::new(rng.random_range(0..=100), rng.random_range(0..=COORD_BOX));
    let mut points = alloc::vec![p];
    for s in slopes {
        let dx = rng.random_range(1..=COORD_BOX / 8);
        p = Point::new(p.x + dx, p.y + s * dx);
        points.push(p);
    }
    PointSet::new(points, None)
}

/// The canonical double chain, lifted by a random extra gap between the
/// chains and then sheared `(x, y) -> (x, y + a·x)` with random `a`; both
/// keep every orientation, so the result is still a `(k, l)` double chain.
fn random_double_chain<R: Rng>(k: usize, l: usize, rng: &mut R) -> Result<PointSet> {
    let base = gen_double_chain(k, l)?;
    let part = base.partition().cloned().ok_or(Error::MissingPartition)?;
    let lift = rng.random_range(0..=100);
    let shear = rng.random_range(-50..=50);
    let points = base
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let y = p.y + if part.upper.contains(&i) { lift } else { 0 };
            Point::new(p.x, y + shear * p.x)
        })
        .collect();
    let ps = PointSet::new(points, Some(part))?;
    debug_assert!(validate_double_chain(&ps)?.is_valid());
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_general_position;

    #[test]
    fn random_sets_are_in_general_position_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let pa = random_general_position(8, &mut a).unwrap();
        assert!(is_general_position(&pa));
        assert!(pa.points().iter().all(|p| (0..=COORD_BOX).contains(&p.x) && (0..=COORD_BOX).contains(&p.y)));
        assert_eq!(Some(pa), random_general_position(8, &mut b));
    }

    #[test]
    fn forced_samples_have_the_right_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let c = random_convex_chain(7, &mut rng).unwrap();
            assert_eq!(crate::disjointness::convex_hull(&c).unwrap().len(), 7);
            let d = random_double_chain(3, 4, &mut rng).unwrap();
            assert!(validate_double_chain(&d).unwrap().is_valid());
        }
    }

    #[test]
    fn n5_scan_confirms() {
        let r = conjecture_scan(5, 20, 3, ScanMode::Random, Budget::UNLIMITED).unwrap();
        assert!(r.confirmed(), "{r:?}");
        assert_eq!(r.solved, 20);
        assert!(r.min_chi.unwrap() >= 3);
    }

    #[test]
    fn forced_modes_hit_their_values() {
        let r = conjecture_scan(6, 5, 9, ScanMode::Convex, Budget::UNLIMITED).unwrap();
        assert!(r.confirmed());
        assert_eq!((r.min_chi, r.max_chi), (Some(3), Some(3)));
        let r = conjecture_scan(7, 5, 9, ScanMode::DoubleChain { k: 3 }, Budget::UNLIMITED).unwrap();
        assert!(r.confirmed());
        assert_eq!(r.expected, Some(3 + 2));
        assert_eq!(r.min_chi, Some(5));
    }

    #[test]
    fn scan_rejects_bad_parameters() {
        assert!(conjecture_scan(3, 1, 0, ScanMode::Random, Budget::UNLIMITED).is_err());
        assert!(conjecture_scan(9, 1, 0, ScanMode::Random, Budget::UNLIMITED).is_err());
        assert!(conjecture_scan(5, 1, 0, ScanMode::DoubleChain { k: 3 }, Budget::UNLIMITED).is_err());
    }
}
