use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::kernels::KernelTable;
use crate::algebra::{factorial, Rational, Series};
use crate::moments::{loop_moment, nonloop_complex_moment};

/// Point of `D(gamma, r)`: the first `r` members of a parallel class are
/// subdivided with parameters `pairs`; the remaining bundle carries `tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalParallelParams {
    pub r: usize,
    pub pairs: Vec<(usize, usize)>,
    pub tail: (usize, usize),
}

/// Point of `D(gamma, r, s)` for a loop class of size `r + s + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLoopParams {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub pairs: Vec<(usize, usize)>,
}

fn for_each_tuple(m: usize, r: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if prefix.len() == r {
        f(prefix);
        return;
    }
    for a in 0..=2 * m {
        prefix.push(a);
        for_each_tuple(m, r, prefix, f);
        prefix.pop();
    }
}

/// `D(gamma, r)` in lexicographic order of `(a_1, ..., a_r)`.
pub fn local_parallel_params(m: usize, n: usize, a_s: usize, b_s: usize, r: usize) -> Vec<LocalParallelParams> {
    assert!(r <= n && a_s + b_s == 2 * m * n, "inconsistent class parameters");
    let mut out = Vec::new();
    for_each_tuple(m, r, &mut Vec::new(), &mut |tuple| {
        let sa: usize = tuple.iter().sum();
        let sb: usize = tuple.iter().map(|a| 2 * m - a).sum();
        if sa <= a_s && sb <= b_s {
            out.push(LocalParallelParams {
                r,
                pairs: tuple.iter().map(|&a| (a, 2 * m - a)).collect(),
                tail: (a_s - sa, b_s - sb),
            });
        }
    });
    out
}

pub fn local_loop_params(m: usize, n: usize) -> Vec<LocalLoopParams> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in 0..=n - r {
            for_each_tuple(m, r, &mut Vec::new(), &mut |tuple| {
                out.push(LocalLoopParams {
                    r,
                    s,
                    t: n - r - s,
                    pairs: tuple.iter().map(|&a| (a, 2 * m - a)).collect(),
                });
            });
        }
    }
    out
}

fn ratio(numer: BigInt, denom: BigInt) -> Rational {
    Rational::new(numer, denom)
}

/// Factor of a single-edge class. `tree` is `None` off the spanning tree,
/// otherwise `Some(c_is_a)` with `c_is_a` true when the root-ward
/// orientation agrees with the reference orientation.
pub fn r_single(kt: &KernelTable, a: usize, tree: Option<bool>) -> Series {
    match tree {
        None => kt.phi(a, 0).clone(),
        Some(c_is_a) => kt.mu(a, 0, c_is_a).clone(),
    }
}

/// Factor of a parallel class of `n` edges with parameters `(a_s, b_s)`.
pub fn r_parallel(kt: &KernelTable, n: usize, a_s: usize, b_s: usize, tree: Option<bool>) -> Series {
    let order = kt.order();
    let mut total = Series::zero(order);
    for r in 0..=n {
        let head = ratio(factorial(n), factorial(r));
        let mut prefix = Vec::new();
        dfs_parallel(
            kt, r, a_s, b_s, tree, &head, &mut prefix,
            &Series::one(order), &Series::zero(order), &mut total,
        );
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn dfs_parallel(
    kt: &KernelTable,
    r: usize,
    a_left: usize,
    b_left: usize,
    tree: Option<bool>,
    head: &Rational,
    prefix: &mut Vec<usize>,
    phis: &Series,
    mixed: &Series,
    total: &mut Series,
) {
    let m = kt.m;
    if prefix.len() == r {
        let (ta, tb) = (a_left, b_left);
        let moment = nonloop_complex_moment(m, ta, tb);
        if moment.is_zero() {
            return;
        }
        let w = head * ratio(moment, factorial(ta) * factorial(tb));
        let term = match tree {
            None => phis.clone(),
            Some(c_is_a) => {
                let c = if c_is_a { ta } else { tb };
                &phis.scale(&Rational::from_integer(c.into())) + mixed
            }
        };
        *total = &*total + &term.scale(&w);
        return;
    }
    for a in 0..=2 * m {
        let b = 2 * m - a;
        if a > a_left || b > b_left {
            continue;
        }
        let phi = kt.phi(a, 1);
        if phi.is_zero() {
            continue;
        }
        let next_phis = phis * phi;
        let next_mixed = match tree {
            None => Series::zero(phis.order()),
            Some(c_is_a) => &(mixed * phi) + &(phis * kt.mu(a, 1, c_is_a)),
        };
        prefix.push(a);
        dfs_parallel(kt, r, a_left - a, b_left - b, tree, head, prefix, &next_phis, &next_mixed, total);
        prefix.pop();
    }
}

/// Factor of a loop class of size `n`. The `r` fully subdivided loops each
/// range freely over `(a, 2m - a)`, so their joint sum is a power.
pub fn r_loop(kt: &KernelTable, n: usize) -> Series {
    let m = kt.m;
    let order = kt.order();
    let mut phi_sum = Series::zero(order);
    for a in 0..=2 * m {
        phi_sum = &phi_sum + kt.phi(a, 2);
    }
    let pair = ratio(nonloop_complex_moment(m, 2 * m, 2 * m), factorial(2 * m));
    let mut total = Series::zero(order);
    for r in 0..=n {
        for s in 0..=n - r {
            let t = n - r - s;
            let lm = loop_moment(m, 2 * m * t);
            if lm.is_zero() {
                continue;
            }
            let multinomial = factorial(n) / (factorial(r) * factorial(s) * factorial(t));
            let coeff = Rational::from_integer(
                Pow::pow(BigInt::from(2), s + t) * factorial(t) * multinomial,
            ) * ratio(lm, factorial(2 * m * t))
                * Pow::pow(&pair, s);
            let term = &kt.f.pow(s as u32) * &phi_sum.pow(r as u32);
            total = &total + &term.scale(&coeff);
        }
    }
    total
}

/// Same sum, enumerated point by point over `D(gamma, r, s)`.
pub fn r_loop_enumerated(kt: &KernelTable, n: usize) -> Series {
    let m = kt.m;
    let order = kt.order();
    let pair = ratio(nonloop_complex_moment(m, 2 * m, 2 * m), factorial(2 * m));
    let mut total = Series::zero(order);
    for p in local_loop_params(m, n) {
        let multinomial = factorial(n) / (factorial(p.r) * factorial(p.s) * factorial(p.t));
        let coeff = Rational::from_integer(
            Pow::pow(BigInt::from(2), p.s + p.t) * factorial(p.t) * multinomial,
        ) * ratio(loop_moment(m, 2 * m * p.t), factorial(2 * m * p.t))
            * Pow::pow(&pair, p.s);
        let mut term = kt.f.pow(p.s as u32);
        for &(a, _) in &p.pairs {
            term = &term * kt.phi(a, 2);
        }
        total = &total + &term.scale(&coeff);
    }
    total
}

/// Same sum as [`r_parallel`], enumerated point by point over `D(gamma, r)`.
pub fn r_parallel_enumerated(kt: &KernelTable, n: usize, a_s: usize, b_s: usize, tree: Option<bool>) -> Series {
    let m = kt.m;
    let order = kt.order();
    let mut total = Series::zero(order);
    for r in 0..=n {
        for p in local_parallel_params(m, n, a_s, b_s, r) {
            let (ta, tb) = p.tail;
            let w = ratio(factorial(n), factorial(r))
                * ratio(nonloop_complex_moment(m, ta, tb), factorial(ta) * factorial(tb));
            let mut phis = Series::one(order);
            for &(a, _) in &p.pairs {
                phis = &phis * kt.phi(a, 1);
            }
            let term = match tree {
                None => phis,
                Some(c_is_a) => {
                    let c = if c_is_a { ta } else { tb };
                    let mut t = phis.scale(&Rational::from_integer(c.into()));
                    for i in 0..p.pairs.len() {
                        let mut q = kt.mu(p.pairs[i].0, 1, c_is_a).clone();
                        for (j, &(a, _)) in p.pairs.iter().enumerate() {
                            if j != i {
                                q = &q * kt.phi(a, 1);
                            }
                        }
                        t = &t + &q;
                    }
                    t
                }
            };
            total = &total + &term.scale(&w);
        }
    }
    total
}
