//! Z-eigenvalue localization for real tensors.
//!
//! Dense tensor storage with the row aggregates `R_i`, `P_j^i` and
//! `|a_{ij..j}|`, the Geršgorin-type, Brauer-type and pairwise `Ω`
//! inclusion regions (as unions of radius intervals), closed-form upper
//! bounds on the Z-spectral radius, and a brute-force Z-eigenpair oracle.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, serialization and
//! the command-line front end live in the `zloc` crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod oracle;
pub mod regions;
pub mod tensor;

pub use bounds::{compare_report, BoundReport, OmegaMax};
pub use oracle::{Eigenpair, InclusionReport, OracleConfig};
pub use regions::{Interval, QuadraticRootPair, RadialRegion};
pub use tensor::{DenseTensor, RowAggregates, TensorError};

/// Default tolerance for the structural predicates.
pub const STRUCTURE_TOL: f64 = 1e-10;
