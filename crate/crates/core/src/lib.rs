//! Subset sum and knapsack decision procedures over tropical matrix semigroups.
//!
//! Two semigroups are supported: square matrices with non-negative integer
//! entries under max-plus multiplication, and square matrices with positive
//! integer entries under max-times multiplication. On top of the exact matrix
//! arithmetic the crate provides:
//!
//! - residuation for one-sided systems `A ⊗ X = B` (principal solution,
//!   solvability test, complete solution enumeration),
//! - memoized pseudo-polynomial solvers for the subset sum and knapsack
//!   decision problems, plus brute-force oracles and memo-capped variants
//!   that may answer "don't know",
//! - the classical hardness reductions (scalar embedding by constant
//!   matrices, exact cover by 3-sets via prime encoding) as executable
//!   instance generators,
//! - counting and uniform sampling over the strata of max-times instances
//!   of a fixed binary size, for genericity experiments.
//!
//! All entries are arbitrary-precision integers; every operation is exact.

mod error;

pub mod census;
pub mod instance;
pub mod matrix;
pub mod reductions;
pub mod semiring;
pub mod solver;
pub mod systems;

pub use error::Error;
pub use instance::{Certificate, Mode, ProblemInstance};
pub use matrix::TropicalMatrix;
pub use semiring::{SemiringTag, SizeMode};
pub use solver::{SolveOutcome, SolveStats, Verdict};
