//! Exact combinatorics behind the invertibility of the principal-term
//! matrices of relative-map relations, together with the torus
//! localization graph calculus those relations are built from.
//!
//! Everything is exact: rationals are arbitrary precision and no floating
//! point value enters any computation.

#![forbid(unsafe_code)]

pub mod error;
pub mod exactalg;
pub mod kernels;
pub mod locgraph;
pub mod partitions;
pub mod relmatrix;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{IndexedMatrix, LaurentT, Rational};
pub use partitions::{LengthBound, MultiPop, MultiShape, Partition, Pop};
