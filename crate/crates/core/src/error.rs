use alloc::string::String;

use crate::disjointness::SegmentId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("point set has no U/L partition")]
    MissingPartition,
    #[error("points {0}, {1}, {2} are collinear")]
    NotGeneralPosition(usize, usize, usize),
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("segment {0} is compared with itself")]
    SameSegment(SegmentId),
    #[error("invalid segment ({0}, {1})")]
    InvalidSegment(usize, usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("coordinate search gave up after {0} increments")]
    SearchExhausted(u32),
    #[error("coloring covers {got} segments, graph has {expected}")]
    ColoringSizeMismatch { expected: usize, got: usize },
    #[error("color ids are not contiguous: {0}")]
    NonContiguousColors(String),
    #[error("empty color class")]
    EmptyClass,
    #[error("point {0} is not the apex of an available star class")]
    NotAStarApex(usize),
    #[error("apex {0} listed twice")]
    DuplicateApex(usize),
    #[error("provider coloring is not proper ({0} violations)")]
    ImproperProvider(usize),
    #[error("no proper coloring with {0} colors exists")]
    ChiTooSmall(usize),
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("n = {n} exceeds the exhaustive-check cap {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("graph data: {0}")]
    InvalidGraph(String),
}
