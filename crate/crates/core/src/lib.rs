//! Double-chain point configurations and the chromatic number of their edge
//! disjointness graphs.
//!
//! The vertices of the edge disjointness graph `D(P)` of a planar point set
//! `P` are all closed segments spanned by `P`; two segments are adjacent when
//! they share no point. This crate provides:
//!
//! - [`geometry`]: exact integer predicates, generators for convex sets and
//!   `(k, l)` double chains, and a double-chain validator;
//! - [`disjointness`]: construction of `D(P)` as a dense bit-matrix graph and
//!   convex hull edges;
//! - [`formulas`]: integer-exact `f(n)` and `g(n)` and the predicted value
//!   `k + f(l)` for double chains;
//! - [`coloring`]: proper-coloring checks, star/thrackle classification, the
//!   constructive upper-bound coloring for double chains and star-apex removal;
//! - [`solver`]: exact chromatic number by DSATUR branch-and-bound, the
//!   enumeration of optimal colorings and the randomized lower-bound scan.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `dchain` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod bitset;
pub mod graph;
pub mod coloring;
pub mod disjointness;
mod error;
pub mod formulas;
pub mod geometry;
pub mod solver;

pub use bitset::BitSet;
pub use coloring::{ClassKind, Coloring, Verdict};
pub use disjointness::{DisjointnessGraph, SegmentId};
pub use error::Error;
pub use formulas::FormulaResult;
pub use graph::BitGraph;
pub use geometry::{Orientation, Partition, Point, PointSet};
pub use solver::{Budget, ChiOutcome, ChiResult};

pub type Result<T, E = Error> = core::result::Result<T, E>;
