//! Exact balanced domination numbers and the certificates around them.
//!
//! A balanced dominating function (BDF) labels every vertex with -1, 0 or 1
//! so that each closed neighborhood sums to zero; the balanced domination
//! number is the largest total label over all BDFs, and a graph is
//! d-balanced when that number is 0.
//!
//! * [`graph`]: graphs, M(G) = A(G) + I, labelings.
//! * [`generators`]: polytope, grid, caterpillar and tree families.
//! * [`exact_solver`]: rational kernel enumeration and a backtracking oracle.
//! * [`layer_certificates`]: equitable layer partitions with nonsingular quotients.
//! * [`tree_analysis`]: two-level trees, full binary trees, caterpillar MBDFs.
//! * [`grid_analysis`]: grid BDF enumeration and block-scheme classification.

pub mod error;
pub mod exact_solver;
pub mod generators;
pub mod graph;
pub mod grid_analysis;
pub mod layer_certificates;
mod parallel;
pub mod tree_analysis;

pub use error::{Error, Result};
pub use exact_solver::{GammaResult, Limits, Method};
pub use graph::{is_bdf, Family, Graph, Labeling};
