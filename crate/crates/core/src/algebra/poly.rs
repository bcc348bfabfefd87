use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::comb::falling_factorial;
use super::rational::{format_rational, Rational};

type Triangle = Mutex<Vec<Vec<BigInt>>>;

fn grow(table: &Triangle, n: usize, next: impl Fn(&[BigInt], usize) -> BigInt) -> Vec<BigInt> {
    let mut t = table.lock().unwrap();
    if t.is_empty() {
        t.push(vec![BigInt::one()]);
    }
    while t.len() <= n {
        let row_len = t.len();
        let prev = t[row_len - 1].clone();
        let row: Vec<BigInt> = (0..=row_len).map(|k| next(&prev, k)).collect();
        t.push(row);
    }
    t[n].clone()
}

fn at(row: &[BigInt], k: usize) -> BigInt {
    row.get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Row `n` of the signed Stirling numbers of the first kind:
/// `(N)_n = sum_k s(n,k) N^k`.
pub fn stirling1_signed(n: usize) -> Vec<BigInt> {
    static TABLE: OnceLock<Triangle> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(Vec::new()));
    grow(table, n, |prev, k| {
        let n1 = prev.len() - 1;
        let left = if k == 0 { BigInt::zero() } else { at(prev, k - 1) };
        left - BigInt::from(n1) * at(prev, k)
    })
}

/// Row `n` of the Stirling numbers of the second kind:
/// `N^n = sum_k S(n,k) (N)_k`.
pub fn stirling2(n: usize) -> Vec<BigInt> {
    static TABLE: OnceLock<Triangle> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(Vec::new()));
    grow(table, n, |prev, k| {
        let left = if k == 0 { BigInt::zero() } else { at(prev, k - 1) };
        left + BigInt::from(k) * at(prev, k)
    })
}

fn trim(mut coeffs: Vec<Rational>) -> Vec<Rational> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

/// Polynomial in `N` written in the falling factorial basis `(N)_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FallingPoly {
    coeffs: Vec<Rational>,
}

/// Polynomial in `N` written in the monomial basis `N^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPoly {
    coeffs: Vec<Rational>,
}

macro_rules! common {
    ($t:ident) => {
        impl $t {
            pub fn new(coeffs: Vec<Rational>) -> Self {
                $t { coeffs: trim(coeffs) }
            }

            pub fn zero() -> Self {
                $t { coeffs: Vec::new() }
            }

            pub fn coeffs(&self) -> &[Rational] {
                &self.coeffs
            }

            pub fn coeff(&self, k: usize) -> Rational {
                self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
            }

            /// `None` for the zero polynomial.
            pub fn degree(&self) -> Option<usize> {
                self.coeffs.len().checked_sub(1)
            }

            pub fn is_integral(&self) -> bool {
                self.coeffs.iter().all(|c| c.is_integer())
            }

            pub fn coeff_strings(&self) -> Vec<String> {
                self.coeffs.iter().map(format_rational).collect()
            }
        }

        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                let n = self.coeffs.len().max(rhs.coeffs.len());
                $t::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
            }
        }
    };
}

common!(FallingPoly);
common!(MonomialPoly);

impl FallingPoly {
    pub fn to_monomial(&self) -> MonomialPoly {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in stirling1_signed(n).into_iter().enumerate() {
                out[k] += c * Rational::from_integer(s);
            }
        }
        MonomialPoly::new(out)
    }

    pub fn eval(&self, n: &BigInt) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from_integer(falling_factorial(n, k)))
            .sum()
    }

    pub fn scale(&self, c: &Rational) -> FallingPoly {
        FallingPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl MonomialPoly {
    pub fn to_falling(&self) -> FallingPoly {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, s) in stirling2(n).into_iter().enumerate() {
                out[k] += c * Rational::from_integer(s);
            }
        }
        FallingPoly::new(out)
    }

    pub fn eval(&self, n: &BigInt) -> Rational {
        let n = Rational::from_integer(n.clone());
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &n + c;
        }
        acc
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Rational],
    basis: impl Fn(usize) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let a = c.abs();
        let var = basis(k);
        let head = if k > 0 && a.numer().is_one() {
            var
        } else {
            format!("{}{var}", a.numer())
        };
        if a.denom().is_one() {
            write!(f, "{head}")?;
        } else {
            write!(f, "{head}/{}", a.denom())?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Highest degree first, e.g. `2N^3 + N`.
impl fmt::Display for MonomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |k| match k {
            0 => String::new(),
            1 => "N".into(),
            _ => format!("N^{k}"),
        })
    }
}

impl fmt::Display for FallingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |k| match k {
            0 => String::new(),
            _ => format!("(N)_{k}"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn stirling_rows() {
        assert_eq!(stirling1_signed(3), vec![0, 2, -3, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(stirling2(4), vec![0, 1, 7, 6, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(stirling2(0), vec![BigInt::one()]);
    }

    #[test]
    fn basis_examples() {
        let p = FallingPoly::new(vec![rat(0, 1), rat(1, 2), rat(1, 2)]);
        assert_eq!(p.to_monomial(), MonomialPoly::new(vec![rat(0, 1), rat(0, 1), rat(1, 2)]));
        let q = FallingPoly::new(vec![rat(0, 1), rat(3, 4), rat(3, 2), rat(1, 2)]);
        assert_eq!(
            q.to_monomial(),
            MonomialPoly::new(vec![rat(0, 1), rat(1, 4), rat(0, 1), rat(1, 2)])
        );
        let one = FallingPoly::new(vec![rat(1, 1)]);
        assert_eq!(one.to_monomial(), MonomialPoly::new(vec![rat(1, 1)]));
    }

    #[test]
    fn eval_agrees_across_bases() {
        let q = FallingPoly::new(vec![rat(2, 1), rat(3, 4), rat(-3, 2), rat(1, 2)]);
        let m = q.to_monomial();
        for n in -3..8 {
            let n = BigInt::from(n);
            assert_eq!(q.eval(&n), m.eval(&n));
        }
        assert_eq!(m.to_falling(), q);
    }

    #[test]
    fn display() {
        let m = MonomialPoly::new(vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(2, 1)]);
        assert_eq!(m.to_string(), "2N^3 + N");
        assert_eq!(MonomialPoly::zero().to_string(), "0");
        let f = FallingPoly::new(vec![rat(-1, 1), rat(1, 2)]);
        assert_eq!(f.to_string(), "(N)_1/2 - 1");
        assert_eq!(m.degree(), Some(3));
    }
}
