//! Exact arithmetic: rationals, Laurent polynomials in the equivariant
//! weight `t`, truncated formal classes in nilpotent generators, and dense
//! rational matrices indexed by POPs.

mod formal;
mod laurent;
mod matrix;
mod rational;

pub use formal::{Factor, FormalClass, Generator, Monomial, Side};
pub use laurent::LaurentT;
pub use matrix::IndexedMatrix;
pub use rational::{binomial, factorial, format_rational, int, inverse, parse_rational, pow, rat, Rational};
