//! `dchain` subcommands.
//!
//! Machine-readable output goes to `--out` (stdout when absent), the human
//! summary to stderr. Exit codes: 0 success, 1 property violation or
//! counterexample, 2 usage or input error, 3 budget exhausted.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use dchain_core::coloring::{class_kinds, construct_double_chain_coloring, double_chain_coloring, verify_coloring};
use dchain_core::disjointness::build_graph;
use dchain_core::formulas::{theorem_value, FormulaResult};
use dchain_core::geometry::{gen_convex, gen_double_chain, validate_double_chain};
use dchain_core::solver::{conjecture_scan, prop4_check, Budget, ChiOutcome, ExactProvider, ScanMode};
use dchain_core::{ClassKind, PointSet};
use serde_json::json;

use crate::formats::{self, ColoringFile, VerdictFile};
use crate::{archive_scan_samples, run_sweep, timed_chi, SweepError};

#[derive(Debug, Parser)]
#[command(name = "dchain", version, about = "Double chains, edge disjointness graphs and their chromatic numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dimacs,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Random,
    Convex,
    DoubleChain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a points file: convex position with --n, or a double chain with --k and --l.
    Gen {
        #[arg(long, conflicts_with_all = ["k", "l"], required_unless_present_all = ["k", "l"])]
        n: Option<usize>,
        #[arg(long, requires = "l")]
        k: Option<usize>,
        #[arg(long, requires = "k")]
        l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the disjointness graph of a points file.
    Graph {
        points: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of n, g(n), f(n) for n in --from..=--n.
    Formulas {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic number of the disjointness graph, with a witness.
    Chi {
        points: PathBuf,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructive coloring of a double chain: the lower chain optimally, then one star per upper point.
    Color {
        #[arg(long, required_unless_present = "points")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "points")]
        l: Option<usize>,
        /// Color this double chain instead of the generated one.
        #[arg(long, conflicts_with_all = ["k", "l"])]
        points: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against a points file.
    Verify {
        points: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact χ of every double chain with k + l <= --max-sum against k + f(l).
    Sweep {
        #[arg(long, default_value_t = 9)]
        max_sum: usize,
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all optimal colorings of D(C_n) and count single-segment classes.
    Prop4 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search for point sets with χ(D(P)) < f(n).
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        mode: Mode,
        /// Upper chain size for --mode double-chain.
        #[arg(long)]
        k: Option<usize>,
        /// Time limit for the whole scan.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where offending point sets are archived.
        #[arg(long, default_value = ".")]
        archive_dir: PathBuf,
    },
}

/// Outcome classes mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Indeterminate,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
            Status::Indeterminate => ExitCode::from(3),
        }
    }
}

pub const EXIT_USAGE: u8 = 2;

pub fn main_with(cli: Cli) -> ExitCode {
    match run(cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_points(path: &Path) -> anyhow::Result<PointSet> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    formats::read_points(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

pub fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Gen { n, k, l, out } => {
            let ps = match (n, k, l) {
                (Some(n), _, _) => gen_convex(n)?,
                (None, Some(k), Some(l)) => gen_double_chain(k, l)?,
                _ => bail!("give --n, or --k and --l"),
            };
            formats::write_points(sink(out.as_deref())?, &ps)?;
            match ps.partition() {
                Some(p) => eprintln!("double chain C_{{{},{}}}: {} points", p.upper.len(), p.lower.len(), ps.len()),
                None => eprintln!("convex set: {} points", ps.len()),
            }
            Ok(Status::Ok)
        }
        Command::Graph { points, format, out } => {
            let ps = load_points(&points)?;
            let g = build_graph(&ps)?;
            let w = sink(out.as_deref())?;
            match format {
                Format::Json => formats::write_graph_json(w, &g)?,
                Format::Dimacs => formats::write_dimacs(w, &g)?,
                Format::Csv => bail!("graphs are written as json or dimacs"),
            }
            eprintln!("D(P): {} vertices, {} edges", g.vertex_count(), g.edge_count());
            Ok(Status::Ok)
        }
        Command::Formulas { n, from, format, out } => {
            if from < 1 || from > n {
                bail!("need 1 <= --from <= --n");
            }
            let rows = (from..=n).map(FormulaResult::of).collect::<Result<Vec<_>, _>>()?;
            let w = sink(out.as_deref())?;
            match format {
                Format::Csv => formats::write_formulas_csv(w, &rows)?,
                Format::Json => {
                    let v: Vec<_> = rows.iter().map(|r| json!({"n": r.n, "g": r.g, "f": r.f})).collect();
                    formats::write_json(w, &v)?
                }
                Format::Dimacs => bail!("formulas are written as csv or json"),
            }
            eprintln!("{} rows, n = {from}..={n}", rows.len());
            Ok(Status::Ok)
        }
        Command::Chi { points, budget_ms, out } => {
            let ps = load_points(&points)?;
            let g = build_graph(&ps)?;
            let t = timed_chi(&g, budget_ms);
            formats::write_json(sink(out.as_deref())?, &t.to_json(ps.len()))?;
            match &t.outcome {
                ChiOutcome::Exact(r) => {
                    eprintln!("chi = {} ({} nodes, {} ms)", r.chi, r.nodes, t.ms);
                    Ok(Status::Ok)
                }
                ChiOutcome::Indeterminate { lower, upper, .. } => {
                    eprintln!("budget exhausted: {lower} <= chi <= {upper}");
                    Ok(Status::Indeterminate)
                }
            }
        }
        Command::Color { k, l, points, out } => {
            let provider = ExactProvider::default();
            let (ps, c) = match points {
                Some(path) => {
                    let ps = load_points(&path)?;
                    let c = double_chain_coloring(&ps, &provider)?;
                    (ps, c)
                }
                None => construct_double_chain_coloring(k.unwrap(), l.unwrap(), &provider)?,
            };
            formats::write_coloring(sink(out.as_deref())?, ps.len(), &c)?;
            let report = validate_double_chain(&ps)?;
            let predicted = theorem_value(report.k as u64, report.l as u64)?;
            let proper = verify_coloring(build_graph(&ps)?.graph(), &c)?.is_proper();
            eprintln!(
                "C_{{{},{}}}: {} colors (k + f(l) = {predicted}), proper = {proper}",
                report.k,
                report.l,
                c.color_count()
            );
            Ok(if proper && c.color_count() as u64 == predicted { Status::Ok } else { Status::Violation })
        }
        Command::Verify { points, coloring, out } => {
            let ps = load_points(&points)?;
            let file: ColoringFile = serde_json::from_reader(BufReader::new(
                File::open(&coloring).with_context(|| format!("opening {}", coloring.display()))?,
            ))?;
            if file.n_points != ps.len() {
                bail!("coloring is for {} points, points file has {}", file.n_points, ps.len());
            }
            let c = file.to_coloring()?;
            let g = build_graph(&ps)?;
            let verdict = verify_coloring(&g, &c)?;
            formats::write_json(sink(out.as_deref())?, &VerdictFile::from(&verdict))?;
            if verdict.is_proper() {
                let stars = class_kinds(ps.len(), &c).iter().filter(|k| matches!(k, ClassKind::Star { .. })).count();
                eprintln!("proper: {} colors, {stars} star classes", c.color_count());
                Ok(Status::Ok)
            } else {
                for &(u, v) in &verdict.violations {
                    eprintln!("violation: segments {} and {} are disjoint but share color {}", g.segment(u), g.segment(v), c.color(u));
                }
                Ok(Status::Violation)
            }
        }
        Command::Sweep { max_sum, budget_ms, format, out } => {
            let rows = match run_sweep(max_sum, budget_ms)? {
                Ok(rows) => rows,
                Err(SweepError::Indeterminate { k, l }) => {
                    eprintln!("budget exhausted at C_{{{k},{l}}}");
                    return Ok(Status::Indeterminate);
                }
            };
            if format != Format::Csv {
                bail!("sweeps are written as csv");
            }
            formats::write_sweep_csv(sink(out.as_deref())?, &rows)?;
            let bad = rows.iter().filter(|r| !r.matches()).count();
            eprintln!("{} double chains, {bad} mismatches", rows.len());
            Ok(if bad == 0 { Status::Ok } else { Status::Violation })
        }
        Command::Prop4 { n, out } => {
            let r = prop4_check(n)?;
            let v = json!({
                "n": r.n,
                "chi": r.chi,
                "colorings": r.colorings,
                "max_singleton_classes": r.max_singleton_classes,
                "offending": r.offending,
                "thrackle_bound_failures": r.thrackle_bound_failures,
                "holds": r.holds(),
            });
            formats::write_json(sink(out.as_deref())?, &v)?;
            eprintln!(
                "n = {n}: {} optimal colorings with {} colors, at most {} singleton classes",
                r.colorings, r.chi, r.max_singleton_classes
            );
            Ok(if r.holds() && r.thrackle_bound_failures == 0 { Status::Ok } else { Status::Violation })
        }
        Command::Conjecture { n, trials, seed, mode, k, budget_ms, out, archive_dir } => {
            let mode = match (mode, k) {
                (Mode::Random, _) => ScanMode::Random,
                (Mode::Convex, _) => ScanMode::Convex,
                (Mode::DoubleChain, Some(k)) => ScanMode::DoubleChain { k },
                (Mode::DoubleChain, None) => bail!("--mode double-chain needs --k"),
            };
            // --budget-ms bounds the whole scan; samples cut off count as indeterminate.
            let started = Instant::now();
            let deadline = budget_ms.map(|ms| started + Duration::from_millis(ms));
            let stop = || deadline.is_some_and(|d| Instant::now() >= d);
            let budget = Budget { node_limit: None, interrupt: Some(&stop) };
            let report = conjecture_scan(n, trials, seed, mode, budget)?;
            let archived = archive_scan_samples(&report, &archive_dir)?;
            let v = json!({
                "n": report.n,
                "mode": format!("{:?}", report.mode),
                "seed": report.seed,
                "trials": report.trials,
                "f_n": report.f_n,
                "expected": report.expected,
                "solved": report.solved,
                "min_chi": report.min_chi,
                "max_chi": report.max_chi,
                "counterexamples": report.counterexamples.len(),
                "mismatches": report.mismatches.len(),
                "indeterminate": report.indeterminate,
                "sampling_failures": report.sampling_failures,
                "archived": archived,
                "ms": started.elapsed().as_millis() as u64,
            });
            formats::write_json(sink(out.as_deref())?, &v)?;
            match report.min_chi {
                Some(m) => eprintln!("n = {n}: {} of {trials} samples solved, min chi = {m}, f(n) = {}", report.solved, report.f_n),
                None => eprintln!("n = {n}: no sample solved"),
            }
            if report.sampling_failures > 0 {
                eprintln!("rejection sampling gave up on {} trials", report.sampling_failures);
            }
            for p in &archived {
                eprintln!("archived {}", p.display());
            }
            Ok(if !report.confirmed() {
                Status::Violation
            } else if report.indeterminate > 0 {
                Status::Indeterminate
            } else {
                Status::Ok
            })
        }
    }
}
