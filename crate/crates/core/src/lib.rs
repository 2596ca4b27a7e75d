//! Runlength-constrained superimposed codes and selectors.
//!
//! A `(k, n, d)`-superimposed code is a `t x n` binary matrix in which every
//! pair of consecutive 1's in a column is separated by at least `d` zeros,
//! and no column's support is contained in the union of any `k - 1` other
//! columns. A `(k, n, d, p)`-selector relaxes the second condition: every
//! `k`-tuple of columns must contain at least `p` rows of the `k x k`
//! identity. This crate counts and samples constrained columns, computes
//! achievability thresholds and lower bounds on `t`, builds certified
//! codes by Moser-Tardos resampling or q-ary expansion, verifies
//! candidate matrices, and simulates one- and two-stage group testing.
//!
//! Row and column indices are 0-based throughout.

pub mod bounds;
pub mod column;
pub mod combinatorics;
pub mod construction;
pub mod error;
pub mod group_testing;
pub mod matrix;
pub mod params;
pub mod verification;

pub use column::BitColumn;
pub use combinatorics::{count_constrained, ConstrainedSpace};
pub use construction::{ConstructionLog, Event};
pub use error::{Error, Result};
pub use matrix::{CodeMatrix, MatrixMeta};
pub use params::CodeParams;
