//! Exact chromatic number of a graph and the searches built on it.
//!
//! The exact search is DSATUR-ordered branch-and-bound: a clique gives the
//! lower bound, a greedy DSATUR coloring the upper bound, and each
//! intermediate color count is decided by backtracking with forward checking.

mod clique;
mod dsatur;
mod enumerate;
mod exact;
mod scan;

pub use clique::clique_lower;
pub use dsatur::dsatur_upper;
pub use enumerate::{enumerate_optimal_colorings, for_each_optimal_coloring, prop4_check, Prop4Report, PROP4_MAX_N};
pub use exact::{chromatic_number_exact, chromatic_number_of_points, Budget, ChiOutcome, ChiResult, ExactProvider};
pub use scan::{conjecture_scan, random_general_position, ScanMode, ScanReport, ScanSample, COORD_BOX};
