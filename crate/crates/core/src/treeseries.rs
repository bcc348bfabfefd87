//! Hypergraph Catalan tree series `F_s(x) = x h_s(P)` where `P = x l(P)`,
//! obtained from the colored plane tree functional equations.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{binomial, Rational, Series};
use crate::moments::block_wick;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColoringRole {
    /// Non-root vertices.
    Internal,
    /// The root, whose children are spread over `s` regions.
    Root { s: usize },
}

/// Number of colorings of a vertex by its number of children, `m` per
/// series index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSeries {
    pub m: usize,
    pub role: ColoringRole,
    pub series: Series,
}

impl ColoringSeries {
    pub fn new(m: usize, role: ColoringRole, order: usize) -> Self {
        let s = match role {
            ColoringRole::Internal => m,
            ColoringRole::Root { s } => s,
        };
        assert!(m >= 1 && s >= 1, "m and s must be positive");
        let series = Series::from_fn(order, |d| {
            Rational::from_integer(block_wick(m, d * m) * binomial(d * m + s - 1, s - 1))
        });
        ColoringSeries { m, role, series }
    }
}

pub fn ell_series(m: usize, order: usize) -> Series {
    ColoringSeries::new(m, ColoringRole::Internal, order).series
}

pub fn h_series(m: usize, s: usize, order: usize) -> Series {
    ColoringSeries::new(m, ColoringRole::Root { s }, order).series
}

fn memo() -> &'static Mutex<HashMap<(usize, usize), Series>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), Series>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Solution of `P = x l(P)`, one coefficient per pass.
pub fn internal_tree_series(m: usize, order: usize) -> Series {
    let ell = ell_series(m, order);
    let mut p = Series::zero(order);
    for _ in 1..order {
        p = ell.compose(&p).expect("P has zero constant term").shift_up(1).truncate(order);
    }
    p
}

/// `F_s^(m)` truncated to `order` (exclusive).
pub fn tree_series(m: usize, s: usize, order: usize) -> Series {
    if let Some(hit) = memo().lock().unwrap().get(&(m, s)) {
        if hit.order() >= order {
            return hit.truncate(order);
        }
    }
    let p = internal_tree_series(m, order);
    let f = h_series(m, s, order)
        .compose(&p)
        .expect("P has zero constant term")
        .shift_up(1)
        .truncate(order);
    memo().lock().unwrap().insert((m, s), f.clone());
    f
}

/// `C_v^(m) = [x^(v+1)] F_1^(m)`.
pub fn hypergraph_catalan(m: usize, v: usize) -> BigInt {
    let f = tree_series(m, 1, v + 2);
    let c = &f.coeffs()[v + 1];
    debug_assert!(c.is_integer());
    if c.is_zero() {
        BigInt::zero()
    } else {
        c.to_integer()
    }
}
