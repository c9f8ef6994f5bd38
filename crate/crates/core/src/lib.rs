//! Exact-arithmetic toolkit for the eigenspaces of the Johnson scheme J(n,w).
//!
//! The crate computes, bounds and brute-force-verifies two minimization
//! invariants of Johnson-graph eigenspaces:
//!
//! * the minimum support of a nonzero vector of the first eigenspace
//!   (closed form, attaining constructions and an independent oracle), and
//! * the minimum number of negative entries of a zero-free eigenvector
//!   (lower bounds from the weight distribution and anticodes, upper bounds
//!   from explicit equitable partitions, plus desk-scale exhaustive search).
//!
//! Everything is computed over exact integers and rationals; no floating
//! point is used anywhere.

pub mod bounds;
pub mod caps;
pub mod combinat;
pub mod error;
pub mod exactlinalg;
pub mod minsupport;
pub mod search;
pub mod spectra;

pub use error::{Error, Result};
