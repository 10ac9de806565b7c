//! Discrete optimal transport over the max-plus (tropical) semiring.
//!
//! Given two max-plus probability measures `μ`, `ν` on finite sets and a
//! nonnegative cost matrix `c`, a *plan* is a matrix `h` over `[-∞, 0]` whose
//! row maxima are the weights of `μ` and whose column maxima are the weights
//! of `ν`. The problem is to minimize `max_{i,j} (c_ij + h_ij)`.
//!
//! The grid splits into L-shaped [regions](regions::build_regions), one per
//! distinct weight λ, and each region is solved independently by a threshold
//! sweep ([`solver::solve`]). [`analysis`] decides reducedness, uniqueness and
//! perfect-matching containment, [`oracle`] holds brute-force references for
//! small instances, and [`randomlab`] studies random cost matrices.

pub mod analysis;
pub mod cost;
pub mod error;
pub mod matching;
pub mod measure;
pub mod oracle;
pub mod plan;
pub mod randomlab;
pub mod regions;
pub mod scalar;
pub mod solver;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A `(row, column)` index pair, 0-based.
pub type Cell = (usize, usize);

pub use cost::CostMatrix;
pub use error::{Error, Result};
pub use measure::{normalize_measure, MaxPlusMeasure};
pub use plan::{is_plan, objective, trivial_plan, Plan};
pub use regions::{build_regions, thresholds, Region};
pub use scalar::{ExtendedReal, Scalar};
pub use solver::{closed_form_distinct, solve, solve_region, RegionSolution, Solution};
