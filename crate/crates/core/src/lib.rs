//! Exact enumeration toolkit for vincular and barred permutation patterns.
//!
//! The crate is organised bottom-up:
//!
//! * [`patterns`]: words, permutations, vincular and barred patterns,
//!   occurrence search, statistics and block decomposition.
//! * [`enumeration`]: pruned generation of avoidance classes, prefix classes,
//!   deletion maps, reversible-deletability certification and
//!   statistic-refined Wilf-equivalence checks.
//! * [`bijections`]: four explicit bijections between avoidance classes and a
//!   harness that verifies them exhaustively.
//! * [`series`]: exact truncated bivariate series, the insertion operators and
//!   the fixed-point solution of the three functional-equation systems.
//! * [`suite`]: the full verification run used by the CLI and the acceptance
//!   test.

pub mod error;
pub mod bijections;
pub mod enumeration;
pub mod patterns;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
