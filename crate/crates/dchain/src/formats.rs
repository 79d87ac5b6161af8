//! JSON, DIMACS and CSV encodings of point sets, graphs, colorings and
//! solver results.

use std::io::{self, BufRead, Write};

use dchain_core::coloring::Verdict;
use dchain_core::disjointness::{build_graph, segment_count, SegmentId};
use dchain_core::{Coloring, DisjointnessGraph, Partition, Point, PointSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] dchain_core::Error),
    #[error("DIMACS line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T, E = FormatError> = std::result::Result<T, E>;

/// `{"n": .., "points": [[x, y], ..], "partition": {"U": [..], "L": [..]} | null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsFile {
    pub n: usize,
    pub points: Vec<[i32; 2]>,
    #[serde(default)]
    pub partition: Option<PartitionFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    #[serde(rename = "U")]
    pub upper: Vec<usize>,
    #[serde(rename = "L")]
    pub lower: Vec<usize>,
}

impl From<&PointSet> for PointsFile {
    fn from(ps: &PointSet) -> Self {
        Self {
            n: ps.len(),
            points: ps.points().iter().map(|p| [p.x, p.y]).collect(),
            partition: ps
                .partition()
                .map(|p| PartitionFile { upper: p.upper.clone(), lower: p.lower.clone() }),
        }
    }
}

impl TryFrom<PointsFile> for PointSet {
    type Error = FormatError;

    fn try_from(f: PointsFile) -> Result<Self> {
        if f.n != f.points.len() {
            return Err(FormatError::Inconsistent(format!("\"n\" is {} but {} points are listed", f.n, f.points.len())));
        }
        let points = f.points.iter().map(|&[x, y]| Point::new(x, y)).collect();
        let partition = f.partition.map(|p| Partition { upper: p.upper, lower: p.lower });
        Ok(PointSet::new(points, partition)?)
    }
}

pub fn write_points<W: Write>(w: W, ps: &PointSet) -> Result<()> {
    write_json(w, &PointsFile::from(ps))
}

pub fn read_points<R: io::Read>(r: R) -> Result<PointSet> {
    let file: PointsFile = serde_json::from_reader(r)?;
    file.try_into()
}

/// `{"n_points": .., "vertices": .., "edges": [[u, v], ..]}`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n_points: usize,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&DisjointnessGraph> for GraphFile {
    fn from(g: &DisjointnessGraph) -> Self {
        Self {
            n_points: g.n_points(),
            vertices: g.vertex_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

pub fn write_graph_json<W: Write>(w: W, g: &DisjointnessGraph) -> Result<()> {
    write_json(w, &GraphFile::from(g))
}

/// Reads graph JSON. With `points`, the graph must also equal `D(points)`.
pub fn read_graph_json<R: io::Read>(r: R, points: Option<&PointSet>) -> Result<DisjointnessGraph> {
    let file: GraphFile = serde_json::from_reader(r)?;
    let g = DisjointnessGraph::from_edges(file.n_points, file.vertices, file.edges.iter().map(|&[u, v]| (u, v)))?;
    if let Some(ps) = points {
        check_rederivable(&g, ps)?;
    }
    Ok(g)
}

fn check_rederivable(g: &DisjointnessGraph, ps: &PointSet) -> Result<()> {
    let rebuilt = build_graph(ps)?;
    if &rebuilt != g {
        return Err(FormatError::Inconsistent("graph does not match the disjointness graph of the points".into()));
    }
    Ok(())
}

/// `p edge V E` followed by one `e u v` line per edge, 1-based, in
/// lexicographic order.
pub fn write_dimacs<W: Write>(mut w: W, g: &DisjointnessGraph) -> Result<()> {
    writeln!(w, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads DIMACS edge format; the vertex count must be `C(n_points, 2)`.
pub fn read_dimacs<R: BufRead>(r: R, n_points: usize) -> Result<DisjointnessGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let err = |msg: String| FormatError::Dimacs { line: idx + 1, msg };
        let mut parts = line.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if parts.next() != Some("edge") {
                    return Err(err("expected `p edge V E`".into()));
                }
                let mut num = || -> Result<usize> {
                    parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("expected `p edge V E`".into()))
                };
                header = Some((num()?, num()?));
            }
            Some("e") => {
                let vertices = header.ok_or_else(|| err("edge before header".into()))?.0;
                let mut num = || -> Result<usize> {
                    let v: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("bad edge".into()))?;
                    if v == 0 || v > vertices {
                        return Err(err(format!("vertex {v} out of range")));
                    }
                    Ok(v - 1)
                };
                edges.push((num()?, num()?));
            }
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let (vertices, count) = header.ok_or(FormatError::Dimacs { line: 0, msg: "missing header".into() })?;
    if count != edges.len() {
        return Err(FormatError::Inconsistent(format!("header announces {count} edges, found {}", edges.len())));
    }
    Ok(DisjointnessGraph::from_edges(n_points, vertices, edges)?)
}

/// `{"n_points": .., "colors": [[i, j, color], ..]}`, sorted by segment rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n_points: usize,
    pub colors: Vec<[usize; 3]>,
}

impl ColoringFile {
    pub fn new(n_points: usize, c: &Coloring) -> Self {
        let colors = (0..c.vertex_count())
            .map(|v| {
                let s = SegmentId::from_rank(v, n_points);
                [s.i(), s.j(), c.color(v)]
            })
            .collect();
        Self { n_points, colors }
    }

    /// Every segment exactly once, colors contiguous; any order accepted.
    pub fn to_coloring(&self) -> Result<Coloring> {
        let total = segment_count(self.n_points);
        let mut colors = vec![usize::MAX; total];
        for &[i, j, c] in &self.colors {
            if i >= self.n_points || j >= self.n_points {
                return Err(FormatError::Inconsistent(format!("segment ({i}, {j}) out of range")));
            }
            let rank = SegmentId::try_new(i, j)?.rank(self.n_points);
            if colors[rank] != usize::MAX {
                return Err(FormatError::Inconsistent(format!("segment ({i}, {j}) colored twice")));
            }
            colors[rank] = c;
        }
        if let Some(missing) = colors.iter().position(|&c| c == usize::MAX) {
            let s = SegmentId::from_rank(missing, self.n_points);
            return Err(FormatError::Inconsistent(format!("segment {s} has no color")));
        }
        Ok(Coloring::new(colors)?)
    }
}

pub fn write_coloring<W: Write>(w: W, n_points: usize, c: &Coloring) -> Result<()> {
    write_json(w, &ColoringFile::new(n_points, c))
}

pub fn read_coloring<R: io::Read>(r: R) -> Result<(usize, Coloring)> {
    let file: ColoringFile = serde_json::from_reader(r)?;
    Ok((file.n_points, file.to_coloring()?))
}

/// `{"proper": bool, "violations": [[u, v], ..]}` with vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub proper: bool,
    pub violations: Vec<[usize; 2]>,
}

impl From<&Verdict> for VerdictFile {
    fn from(v: &Verdict) -> Self {
        Self { proper: v.is_proper(), violations: v.violations.iter().map(|&(a, b)| [a, b]).collect() }
    }
}

/// `{"chi": .., "witness": <coloring>, "nodes": .., "ms": ..}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiFile {
    pub chi: usize,
    pub witness: ColoringFile,
    pub nodes: u64,
    pub ms: u64,
}

/// Emitted instead of [`ChiFile`] when the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminateFile {
    pub status: String,
    pub lower: usize,
    pub upper: usize,
    pub best: ColoringFile,
    pub nodes: u64,
    pub ms: u64,
}

/// One row of the double-chain sweep CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub k: usize,
    pub l: usize,
    pub chi: usize,
    pub expected: usize,
}

impl SweepRow {
    pub fn matches(&self) -> bool {
        self.chi == self.expected
    }
}

pub const SWEEP_HEADER: &str = "k,l,chi,expected,match";

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(w, "{},{},{},{},{}", r.k, r.l, r.chi, r.expected, r.matches())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_formulas_csv<W: Write>(mut w: W, rows: &[dchain_core::FormulaResult]) -> Result<()> {
    writeln!(w, "n,g,f")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.n, r.g, r.f)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
