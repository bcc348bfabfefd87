//! Exact arithmetic substrate: rationals, truncated power series, polynomial
//! bases and a handful of integer combinatorics helpers.

mod comb;
mod matrix;
mod poly;
mod rational;
mod series;

pub use comb::{binomial, factorial, falling_factorial};
pub use matrix::integer_determinant;
pub use poly::{stirling1_signed, stirling2, FallingPoly, MonomialPoly};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::Series;
