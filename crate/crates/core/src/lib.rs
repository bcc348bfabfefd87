//! Exact computation of hypergraph matrix model moment polynomials and of
//! their genus-stratified generating functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: rationals, truncated power series, polynomial bases.
//! * [`moments`]: generalized Wick numbers and the formal complex moments.
//! * [`graphs`]: multigraph families up to isomorphism, automorphism counts.
//! * [`flows`]: balanced digraph structures, moment and Eulerian tour counts.
//! * [`treeseries`]: the colored plane tree series `F_s^(m)`.
//! * [`momentpolys`]: the polynomials `P^(m)_{2mr}(N)` and their oracles.
//! * [`genus`]: the series `G_g^(m)` for every genus.
//! * [`wright`]: Wright's connected-graph series and the genus 1 scheme series.
//! * [`cli`]: command line front end, cache and self-test.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod flows;
pub mod genus;
pub mod graphs;
pub mod momentpolys;
pub mod moments;
pub mod treeseries;
pub mod wright;

pub use algebra::{FallingPoly, MonomialPoly, Rational, Series};
pub use error::{Error, Result};
