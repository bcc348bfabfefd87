//! Generalized Wick numbers and the formal moments attached to loop and
//! nonloop edge classes, plus the small scalar helpers used by the genus
//! formulas.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::algebra::{binomial, factorial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    Loop,
    Nonloop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MomentSpec {
    pub m: usize,
    pub normalization: Normalization,
}

impl MomentSpec {
    pub fn new(m: usize, normalization: Normalization) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        Ok(MomentSpec { m, normalization })
    }

    /// Moment of `a` z-letters and `b` conjugate letters. Loop moments only
    /// see the total letter count.
    pub fn evaluate(&self, a: usize, b: usize) -> BigInt {
        match self.normalization {
            Normalization::Loop => loop_moment(self.m, a + b),
            Normalization::Nonloop => nonloop_complex_moment(self.m, a, b),
        }
    }
}

/// Number of partitions of a `k`-set into blocks of size `n`.
pub fn block_wick(n: usize, k: usize) -> BigInt {
    assert!(n >= 1, "block size must be positive");
    if k % n != 0 {
        return BigInt::zero();
    }
    let blocks = k / n;
    let denom = Pow::pow(factorial(n), blocks) * factorial(blocks);
    factorial(k) / denom
}

pub fn loop_moment(m: usize, k: usize) -> BigInt {
    block_wick(2 * m, k)
}

fn nonloop_memo() -> &'static Mutex<HashMap<(usize, usize, usize), BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize, usize), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `<z^a zbar^b>_m`: partitions of `a` z-letters and `b` zbar-letters into
/// blocks of size `2m` in which every block has z-count minus zbar-count
/// divisible by 4.
pub fn nonloop_complex_moment(m: usize, a: usize, b: usize) -> BigInt {
    assert!(m >= 1, "m must be positive");
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    if (a + b) % (2 * m) != 0 || (a - b) % 4 != 0 {
        return BigInt::zero();
    }
    if let Some(v) = nonloop_memo().lock().unwrap().get(&(m, a, b)) {
        return v.clone();
    }
    let mut local = HashMap::new();
    let v = nonloop_rec(m, a, b, &mut local);
    let mut memo = nonloop_memo().lock().unwrap();
    for ((x, y), val) in local {
        memo.insert((m, x, y), val);
    }
    v
}

fn nonloop_rec(m: usize, a: usize, b: usize, memo: &mut HashMap<(usize, usize), BigInt>) -> BigInt {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    if a == 0 {
        return BigInt::one();
    }
    if (a + b) % (2 * m) != 0 || (a - b) % 4 != 0 {
        return BigInt::zero();
    }
    if let Some(v) = memo.get(&(a, b)) {
        return v.clone();
    }
    // The block holding the first z-letter takes i z's and j zbar's.
    let mut total = BigInt::zero();
    for i in 1..=a.min(2 * m) {
        let j = 2 * m - i;
        if j > b || (i as i64 - j as i64).rem_euclid(4) != 0 {
            continue;
        }
        let rest = nonloop_rec(m, a - i, b - j, memo);
        if !rest.is_zero() {
            total += binomial(a - 1, i - 1) * binomial(b, j) * rest;
        }
    }
    memo.insert((a, b), total.clone());
    total
}

pub const BRUTEFORCE_LETTER_LIMIT: usize = 16;

/// Exhaustive enumeration of the block partitions counted by
/// [`nonloop_complex_moment`].
pub fn complex_moment_bruteforce(m: usize, a: usize, b: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if a + b > BRUTEFORCE_LETTER_LIMIT {
        return Err(Error::Guard(format!(
            "brute-force moment limited to {BRUTEFORCE_LETTER_LIMIT} letters, got {}",
            a + b
        )));
    }
    let n = a + b;
    if n % (2 * m) != 0 {
        return Ok(BigInt::zero());
    }
    let z_mask: u32 = (1u32 << a) - 1;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(BigInt::from(brute_rec(full, z_mask, 2 * m)))
}

fn brute_rec(remaining: u32, z_mask: u32, size: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let first = remaining.trailing_zeros();
    let rest = remaining & !(1 << first);
    let pool: Vec<u32> = (0..32).filter(|i| rest >> i & 1 == 1).collect();
    let mut count = 0;
    let mut pick = Vec::with_capacity(size);
    choose(&pool, 0, size - 1, &mut pick, &mut |chosen| {
        let block = chosen.iter().fold(1u32 << first, |acc, &i| acc | 1 << i);
        let z = (block & z_mask).count_ones() as i64;
        let zb = (block & !z_mask).count_ones() as i64;
        if (z - zb).rem_euclid(4) == 0 {
            count += brute_rec(remaining & !block, z_mask, size);
        }
    });
    count
}

fn choose(pool: &[u32], start: usize, k: usize, pick: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if k == 0 {
        f(pick);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k {
            break;
        }
        pick.push(pool[i]);
        choose(pool, i + 1, k - 1, pick, f);
        pick.pop();
    }
}

/// `(a / 2m) * C(2m, a)`.
pub fn beta(m: usize, a: usize) -> Result<Rational> {
    if a > 2 * m {
        return Err(Error::InvalidArgument(format!("beta needs 0 <= a <= {}, got {a}", 2 * m)));
    }
    Ok(Rational::new(BigInt::from(a) * binomial(2 * m, a), BigInt::from(2 * m)))
}

/// `sum_{i<k} a^i b^(k-1-i)`.
pub fn tau(k: usize, a: usize, b: usize) -> BigInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut total = BigInt::zero();
    for i in 0..k {
        total += Pow::pow(&a, i) * Pow::pow(&b, k - 1 - i);
    }
    total
}

/// Dimension of degree-`t` homogeneous polynomials in `r` variables.
pub fn lambda_dim(r: usize, t: usize) -> BigInt {
    assert!(r >= 1, "lambda_dim needs r >= 1");
    binomial(r - 1 + t, r - 1)
}
