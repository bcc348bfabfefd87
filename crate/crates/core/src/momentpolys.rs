//! Moment polynomials `P_{2mr}(N)` from the graph expansion, their
//! falling-factorial coefficients, and two independent oracles.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{factorial, FallingPoly, MonomialPoly, Rational};
use crate::error::{Error, Result};
use crate::flows::{edet_count, enumerate_balanced, moment_contribution};
use crate::graphs::{enumerate_gamma_r, GraphEntry};
use crate::moments::{loop_moment, nonloop_complex_moment};

/// Coefficients of `P / (2mr)` over `(N)_{r+1}, (N)_r, ..., (N)_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaTable {
    pub m: usize,
    pub r: usize,
    pub alpha: Vec<Rational>,
}

pub fn check_poly_guard(m: usize, r: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if r == 0 || r > 4 || (r == 4 && m > 4) {
        return Err(Error::Guard(format!(
            "moment polynomial limited to r <= 4 (m <= 4 when r = 4), got m={m}, r={r}"
        )));
    }
    Ok(())
}

/// `sum_gamma W(gamma) M(gamma)` over the balanced structures of one graph.
pub fn weighted_tour_sum(entry: &GraphEntry, m: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for gamma in enumerate_balanced(&entry.graph, m, true) {
        let moment = moment_contribution(&gamma);
        if moment.is_zero() {
            continue;
        }
        total += edet_count(&gamma)? * moment;
    }
    Ok(total)
}

/// `P_{2mr}(N) = sum over connected graphs with r edges of
/// (N)_v / |Aut_v G| * sum_gamma W M`, in the falling basis.
pub fn moment_polynomial(m: usize, r: usize) -> Result<FallingPoly> {
    check_poly_guard(m, r)?;
    moment_polynomial_from_graphs(m, &enumerate_gamma_r(r)?)
}

pub fn moment_polynomial_from_graphs(m: usize, graphs: &[GraphEntry]) -> Result<FallingPoly> {
    let terms: Vec<(usize, Rational)> = graphs
        .par_iter()
        .map(|entry| {
            let s = weighted_tour_sum(entry, m)?;
            Ok((entry.graph.vertex_count(), Rational::new(s, entry.aut_v.clone())))
        })
        .collect::<Result<_>>()?;
    let top = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); top + 1];
    for (v, c) in terms {
        coeffs[v] += c;
    }
    Ok(FallingPoly::new(coeffs))
}

pub fn alpha_coeffs(m: usize, r: usize) -> Result<AlphaTable> {
    let p = moment_polynomial(m, r)?;
    Ok(alpha_from_poly(m, r, &p))
}

pub fn alpha_from_poly(m: usize, r: usize, p: &FallingPoly) -> AlphaTable {
    let scale = Rational::new(BigInt::one(), BigInt::from(2 * m * r));
    let alpha = (0..=r + 1).map(|l| p.coeff(r + 1 - l) * &scale).collect();
    AlphaTable { m, r, alpha }
}

pub const TRACE_WORD_LIMIT: u64 = 20_000_000;

/// `<Tr X^{2mr}>` at size `N` by summing per-pair moments over every index
/// word.
pub fn trace_word_oracle(m: usize, r: usize, n: usize) -> Result<BigInt> {
    let len = 2 * m * r;
    let words = (n as u64).checked_pow(len as u32).filter(|&w| w <= TRACE_WORD_LIMIT);
    if n == 0 || words.is_none() {
        return Err(Error::Guard(format!(
            "trace-word oracle limited to N^(2mr) <= {TRACE_WORD_LIMIT}, got N={n}, 2mr={len}"
        )));
    }
    let mut table: HashMap<(usize, usize), u128> = HashMap::new();
    for a in 0..=len {
        for b in 0..=len - a {
            let v = nonloop_complex_moment(m, a, b);
            table.insert((a, b), u128::try_from(v).expect("moment fits in u128"));
        }
    }
    let loops: Vec<u128> =
        (0..=len).map(|k| u128::try_from(loop_moment(m, k)).expect("fits")).collect();
    let total: u128 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut word = vec![0usize; len];
            word[0] = first;
            let mut acc = 0u128;
            let mut counts = vec![0usize; n * n];
            loop {
                counts.iter_mut().for_each(|c| *c = 0);
                for k in 0..len {
                    counts[word[k] * n + word[(k + 1) % len]] += 1;
                }
                let mut prod = 1u128;
                for i in 0..n {
                    prod *= loops[counts[i * n + i]];
                    if prod == 0 {
                        break;
                    }
                    for j in i + 1..n {
                        prod *= table[&(counts[i * n + j], counts[j * n + i])];
                        if prod == 0 {
                            break;
                        }
                    }
                    if prod == 0 {
                        break;
                    }
                }
                acc += prod;
                // Odometer over positions 1..len.
                let mut k = len - 1;
                loop {
                    if k == 0 {
                        return acc;
                    }
                    word[k] += 1;
                    if word[k] < n {
                        break;
                    }
                    word[k] = 0;
                    k -= 1;
                }
            }
        })
        .sum();
    Ok(BigInt::from(total))
}

/// Unique polynomial of the given degree through the first `degree + 1`
/// samples; any further samples must agree.
pub fn interpolate_polynomial(samples: &[(BigInt, Rational)], degree: usize) -> Result<MonomialPoly> {
    if samples.len() < degree + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} samples for degree {degree}, got {}",
            degree + 1,
            samples.len()
        )));
    }
    let pts = &samples[..degree + 1];
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        // Lagrange basis polynomial for node i, built up in the monomial basis.
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            if xi == xj {
                return Err(Error::InvalidArgument("repeated sample point".into()));
            }
            let xj = Rational::from_integer(xj.clone());
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= Rational::from_integer(xi.clone()) - xj;
        }
        let w = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &w;
        }
    }
    let poly = MonomialPoly::new(coeffs);
    for (x, y) in &samples[degree + 1..] {
        if &poly.eval(x) != y {
            return Err(Error::Inconsistent(format!(
                "sample at N={x} disagrees with the interpolant"
            )));
        }
    }
    Ok(poly)
}

pub const PAIRING_LIMIT: usize = 6;

/// `sum over pairings pi of the 2r-gon of N^{cycles(pi . rho)}`.
pub fn pairing_oracle_gue(r: usize) -> Result<MonomialPoly> {
    if r == 0 || r > PAIRING_LIMIT {
        return Err(Error::Guard(format!("pairing oracle limited to 1 <= r <= {PAIRING_LIMIT}")));
    }
    let n = 2 * r;
    let mut counts = vec![0u64; n + 2];
    let mut pi = vec![usize::MAX; n];
    pairings(&mut pi, &mut |pi| {
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = pi[(x + 1) % n];
            }
        }
        counts[cycles] += 1;
    });
    Ok(MonomialPoly::new(
        counts.into_iter().map(|c| Rational::from_integer(c.into())).collect(),
    ))
}

fn pairings(pi: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let Some(i) = pi.iter().position(|&p| p == usize::MAX) else {
        f(pi);
        return;
    };
    for j in i + 1..pi.len() {
        if pi[j] == usize::MAX {
            pi[i] = j;
            pi[j] = i;
            pairings(pi, f);
            pi[i] = usize::MAX;
            pi[j] = usize::MAX;
        }
    }
}

/// Number of pairings, `(2r-1)!!`.
pub fn pairing_count(r: usize) -> BigInt {
    factorial(2 * r) / (factorial(r) * num_traits::pow(BigInt::from(2), r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn mono(c: &[i64]) -> MonomialPoly {
        MonomialPoly::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn gue_polynomials() {
        assert_eq!(moment_polynomial(1, 1).unwrap().to_monomial(), mono(&[0, 0, 1]));
        assert_eq!(moment_polynomial(1, 2).unwrap().to_monomial(), mono(&[0, 1, 0, 2]));
        assert_eq!(moment_polynomial(1, 3).unwrap().to_monomial(), mono(&[0, 0, 10, 0, 5]));
        assert_eq!(moment_polynomial(2, 2).unwrap().to_monomial(), mono(&[0, 8, 21, 6]));
        assert!(moment_polynomial(5, 4).is_err());
        assert!(moment_polynomial(1, 5).is_err());
    }

    #[test]
    fn alpha_tables() {
        let a = alpha_coeffs(1, 2).unwrap();
        assert_eq!(a.alpha, vec![rat(1, 2), rat(3, 2), rat(3, 4), rat(0, 1)]);
        let a = alpha_coeffs(1, 1).unwrap();
        assert_eq!(a.alpha, vec![rat(1, 2), rat(1, 2), rat(0, 1)]);
        assert_eq!(alpha_coeffs(2, 1).unwrap().alpha[0], rat(1, 4));
    }

    #[test]
    fn trace_words() {
        let got: Vec<BigInt> = (1..=3).map(|n| trace_word_oracle(1, 2, n).unwrap()).collect();
        assert_eq!(got, vec![BigInt::from(3), BigInt::from(18), BigInt::from(57)]);
        assert_eq!(trace_word_oracle(2, 2, 1).unwrap(), BigInt::from(35));
        for n in 1..5 {
            assert_eq!(trace_word_oracle(1, 1, n).unwrap(), BigInt::from(n * n));
        }
        assert!(trace_word_oracle(4, 4, 3).is_err());
    }

    #[test]
    fn interpolation() {
        let samples: Vec<_> = (1..=5)
            .map(|n| (BigInt::from(n), rat(2 * n * n * n + n, 1)))
            .collect();
        assert_eq!(interpolate_polynomial(&samples, 3).unwrap(), mono(&[0, 1, 0, 2]));
        let constant: Vec<_> = (0..3).map(|n| (BigInt::from(n), rat(7, 1))).collect();
        assert_eq!(interpolate_polynomial(&constant, 0).unwrap(), mono(&[7]));
        let mut bad = samples.clone();
        bad[4].1 = rat(0, 1);
        assert!(matches!(interpolate_polynomial(&bad, 3), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn pairings_oracle() {
        assert_eq!(pairing_oracle_gue(1).unwrap(), mono(&[0, 0, 1]));
        assert_eq!(pairing_oracle_gue(2).unwrap(), mono(&[0, 1, 0, 2]));
        assert_eq!(pairing_oracle_gue(3).unwrap(), mono(&[0, 0, 10, 0, 5]));
        assert_eq!(pairing_count(4), BigInt::from(105));
    }
}
