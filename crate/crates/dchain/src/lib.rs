//! File formats, timed solver runs and the `dchain` command line on top of
//! [`dchain_core`].

pub mod cli;
pub mod formats;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use dchain_core::disjointness::build_graph;
use dchain_core::formulas::theorem_value;
use dchain_core::geometry::gen_double_chain;
use dchain_core::solver::{chromatic_number_exact, Budget, ChiOutcome, ScanReport};
use dchain_core::BitGraph;

pub use dchain_core;

use crate::formats::{ChiFile, ColoringFile, IndeterminateFile, SweepRow};

/// Solver outcome plus wall-clock time.
#[derive(Clone, Debug)]
pub struct TimedChi {
    pub outcome: ChiOutcome,
    pub ms: u64,
}

/// Runs the exact solver, optionally stopping after `budget_ms`.
pub fn timed_chi(g: &BitGraph, budget_ms: Option<u64>) -> TimedChi {
    let start = Instant::now();
    let deadline = budget_ms.map(|ms| start + Duration::from_millis(ms));
    let stop = || deadline.is_some_and(|d| Instant::now() >= d);
    let budget = Budget { node_limit: None, interrupt: Some(&stop) };
    let outcome = chromatic_number_exact(g, budget);
    TimedChi { outcome, ms: start.elapsed().as_millis() as u64 }
}

impl TimedChi {
    /// JSON value in the `chi` result format (or its indeterminate variant).
    pub fn to_json(&self, n_points: usize) -> serde_json::Value {
        match &self.outcome {
            ChiOutcome::Exact(r) => serde_json::to_value(ChiFile {
                chi: r.chi,
                witness: ColoringFile::new(n_points, &r.witness),
                nodes: r.nodes,
                ms: self.ms,
            }),
            ChiOutcome::Indeterminate { lower, upper, best, nodes } => serde_json::to_value(IndeterminateFile {
                status: "indeterminate".into(),
                lower: *lower,
                upper: *upper,
                best: ColoringFile::new(n_points, best),
                nodes: *nodes,
                ms: self.ms,
            }),
        }
        .expect("result types serialize")
    }
}

/// Grid of the double-chain sweep: `1 <= k <= l`, `l >= 3`, `k + l <= max_sum`.
pub fn sweep_grid(max_sum: usize) -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for k in 1..=max_sum / 2 {
        for l in k.max(3)..=max_sum.saturating_sub(k) {
            grid.push((k, l));
        }
    }
    grid
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepError {
    Indeterminate { k: usize, l: usize },
}

/// Exact `χ(D(C_{k,l}))` against `k + f(l)` over [`sweep_grid`].
pub fn run_sweep(max_sum: usize, budget_ms: Option<u64>) -> anyhow::Result<Result<Vec<SweepRow>, SweepError>> {
    let mut rows = Vec::new();
    for (k, l) in sweep_grid(max_sum) {
        let g = build_graph(&gen_double_chain(k, l)?)?;
        let expected = theorem_value(k as u64, l as u64)? as usize;
        match timed_chi(&g, budget_ms).outcome {
            ChiOutcome::Exact(r) => rows.push(SweepRow { k, l, chi: r.chi, expected }),
            ChiOutcome::Indeterminate { .. } => return Ok(Err(SweepError::Indeterminate { k, l })),
        }
    }
    Ok(Ok(rows))
}

/// Writes every counterexample and forced-mode mismatch of a scan as a
/// points file in `dir`; returns the paths written.
pub fn archive_scan_samples(report: &ScanReport, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let tagged = report
        .counterexamples
        .iter()
        .map(|s| ("counterexample", s))
        .chain(report.mismatches.iter().map(|s| ("mismatch", s)));
    for (tag, sample) in tagged {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!(
            "{tag}_n{}_seed{}_trial{}_chi{}.json",
            report.n, report.seed, sample.trial, sample.chi
        ));
        formats::write_points(fs::File::create(&path)?, &sample.points)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_for_nine() {
        let grid = sweep_grid(9);
        assert_eq!(grid.len(), 17);
        assert!(grid.contains(&(1, 3)) && grid.contains(&(4, 5)) && grid.contains(&(1, 8)));
        assert!(grid.iter().all(|&(k, l)| 1 <= k && k <= l && l >= 3 && k + l <= 9));
        assert!(sweep_grid(3).is_empty());
    }

    #[test]
    fn timed_chi_serializes() {
        let g = build_graph(&gen_double_chain(1, 3).unwrap()).unwrap();
        let t = timed_chi(&g, None);
        let v = t.to_json(4);
        assert_eq!(v["chi"], 2);
        assert_eq!(v["witness"]["n_points"], 4);
        assert_eq!(v["witness"]["colors"].as_array().unwrap().len(), 6);
    }
}
