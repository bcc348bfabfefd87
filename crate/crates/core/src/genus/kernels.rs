use std::collections::HashMap;

use num_bigint::BigInt;

use crate::algebra::{factorial, Rational, Series};
use crate::moments::beta;
use crate::treeseries::tree_series;

/// Arguments of the kernels `mu_{>=K}(c)` and `phi_{>=K}` for one
/// subdivided edge with `a + b = 2m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiKernelParams {
    pub m: usize,
    pub a: usize,
    pub b: usize,
    pub k: usize,
    /// `true` selects `c = a`, `false` selects `c = b` (used by `mu` only).
    pub c_is_a: bool,
}

impl PhiKernelParams {
    pub fn new(m: usize, a: usize, k: usize, c_is_a: bool) -> Self {
        assert!(a <= 2 * m, "a must lie in 0..=2m");
        PhiKernelParams { m, a, b: 2 * m - a, k, c_is_a }
    }

    fn vanishes(&self) -> bool {
        (self.a as i64 - self.b as i64).rem_euclid(4) != 0
    }

    fn c(&self) -> usize {
        if self.c_is_a {
            self.a
        } else {
            self.b
        }
    }
}

fn int(x: impl Into<BigInt>) -> Rational {
    Rational::from_integer(x.into())
}

/// `u^K / (1 - u)` with `u = beta(c) F`.
fn geometric(m: usize, c: usize, k: usize, f: &Series) -> Series {
    let u = f.scale(&beta(m, c).expect("c <= 2m"));
    u.geometric_tail(k as u32).expect("F has zero constant term")
}

/// `c (beta(c) F)^K / (a! b! (1 - beta(c) F))`, zero unless `4 | a - b`.
pub fn mu_with(p: &PhiKernelParams, f: &Series) -> Series {
    if p.vanishes() {
        return Series::zero(f.order());
    }
    let c = p.c();
    let w = Rational::new(BigInt::from(c), factorial(p.a) * factorial(p.b));
    geometric(p.m, c, p.k, f).scale(&w)
}

/// `phi_{>=K}(a, b)` expanded in `F`; zero unless `4 | a - b`.
pub fn phi_with(p: &PhiKernelParams, f: &Series) -> Series {
    let n = f.order();
    if p.vanishes() {
        return Series::zero(n);
    }
    let (m, a, b, k) = (p.m, p.a, p.b, p.k);
    if a != b {
        let ta = geometric(m, a, k, f).scale(&int(a));
        let tb = geometric(m, b, k, f).scale(&int(b));
        let d = Rational::new(
            BigInt::from(1),
            factorial(a) * factorial(b) * BigInt::from(a as i64 - b as i64),
        );
        return (&ta - &tb).scale(&d);
    }
    let w = Rational::new(BigInt::from(1), factorial(m) * factorial(m));
    let u = f.scale(&beta(m, m).expect("m <= 2m"));
    let one_minus = &Series::one(n) - &u;
    let g = Series::one(n).div(&(&one_minus * &one_minus)).expect("unit constant term");
    let mut correction = Series::zero(n);
    let mut power = Series::one(n);
    for i in 1..=k {
        correction = &correction + &power.scale(&int(i));
        power = &power * &u;
    }
    (&g - &correction).scale(&w)
}

pub fn mu_series(p: &PhiKernelParams, order: usize) -> Series {
    mu_with(p, &tree_series(p.m, 2 * p.m, order))
}

pub fn phi_series(p: &PhiKernelParams, order: usize) -> Series {
    phi_with(p, &tree_series(p.m, 2 * p.m, order))
}

/// Every kernel needed by the edge-class factors at one `(m, order)`, with
/// `K` in `0..=2`.
#[derive(Clone, Debug)]
pub struct KernelTable {
    pub m: usize,
    pub f: Series,
    phi: HashMap<(usize, usize), Series>,
    mu: HashMap<(usize, usize, bool), Series>,
}

impl KernelTable {
    pub fn new(m: usize, order: usize) -> Self {
        let f = tree_series(m, 2 * m, order);
        let mut phi = HashMap::new();
        let mut mu = HashMap::new();
        for a in 0..=2 * m {
            for k in 0..=2 {
                phi.insert((a, k), phi_with(&PhiKernelParams::new(m, a, k, true), &f));
                for c_is_a in [true, false] {
                    mu.insert(
                        (a, k, c_is_a),
                        mu_with(&PhiKernelParams::new(m, a, k, c_is_a), &f),
                    );
                }
            }
        }
        KernelTable { m, f, phi, mu }
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    pub fn phi(&self, a: usize, k: usize) -> &Series {
        &self.phi[&(a, k)]
    }

    pub fn mu(&self, a: usize, k: usize, c_is_a: bool) -> &Series {
        &self.mu[&(a, k, c_is_a)]
    }
}
