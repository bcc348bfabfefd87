//! Generating functions for connected multigraphs of fixed Betti number,
//! built from the tree function, and the genus-1 unicellular map scheme
//! series.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::algebra::{factorial, parse_rational, Rational, Series};
use crate::error::{Error, Result};
use crate::graphs::{enumerate_min_degree3, GraphEntry};
use crate::treeseries::tree_series;

/// `sum x^v y^e / |Aut G|` over a family of graphs of one Betti number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateAutSum {
    pub terms: Vec<(usize, usize, Rational)>,
}

#[derive(Deserialize)]
struct TermRecord {
    v: usize,
    e: usize,
    coeff: String,
}

#[derive(Deserialize)]
struct AutSumFile {
    terms: Vec<TermRecord>,
}

/// Shipped bivariate sum for Betti number 5.
pub const G5_AUTSUM_JSON: &str = include_str!("../data/wright_g5_autsum.json");

impl BivariateAutSum {
    pub fn from_graphs(graphs: &[GraphEntry]) -> Self {
        let mut terms: Vec<(usize, usize, Rational)> = Vec::new();
        for g in graphs {
            let (v, e) = (g.graph.vertex_count(), g.graph.edge_count());
            let w = Rational::new(BigInt::from(1), g.aut.clone());
            match terms.iter_mut().find(|t| t.0 == v && t.1 == e) {
                Some(t) => t.2 += w,
                None => terms.push((v, e, w)),
            }
        }
        terms.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        BivariateAutSum { terms }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AutSumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bivariate sum: {e}")))?;
        let terms = file
            .terms
            .into_iter()
            .map(|t| Ok((t.v, t.e, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BivariateAutSum { terms })
    }

    pub fn shipped_g5() -> Self {
        Self::from_json(G5_AUTSUM_JSON).expect("shipped data parses")
    }
}

/// `T`, the compositional inverse of `x e^-x`; `[x^v] T = v^(v-1) / v!`.
pub fn tree_function(order: usize) -> Series {
    let f = Series::from_fn(order, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), factorial(k - 1))
        }
    });
    if order < 2 {
        return Series::zero(order);
    }
    f.reversion().expect("x e^-x has unit linear term")
}

/// `sum coeff T^v / (1 - T)^e`.
pub fn wg_from_bivariate(bs: &BivariateAutSum, order: usize) -> Series {
    let t = tree_function(order);
    let inv = Series::one(order)
        .div(&(&Series::one(order) - &t))
        .expect("unit constant term");
    let mut out = Series::zero(order);
    for (v, e, c) in &bs.terms {
        let term = &t.pow(*v as u32) * &inv.pow(*e as u32);
        out = &out + &term.scale(c);
    }
    out
}

/// `W_g` for `g <= 3` (`g = 4` with `allow_large`); larger genera go
/// through [`wg_from_bivariate`].
pub fn w_series(g: usize, order: usize, allow_large: bool) -> Result<Series> {
    let t = tree_function(order);
    match g {
        0 => {
            let t = if order == 0 { t } else { tree_function(order + 1) };
            Ok(t.shift_down(1)?.integrate(1).truncate(order))
        }
        1 => Ok(t
            .log_tail(1)?
            .scale(&Rational::new(BigInt::from(1), BigInt::from(2)))),
        _ => {
            let top = if allow_large { 4 } else { 3 };
            if g > top {
                return Err(Error::Guard(format!(
                    "Wright series by enumeration limited to g <= {top}, got {g}"
                )));
            }
            let graphs = enumerate_min_degree3(g, false)?;
            Ok(wg_from_bivariate(&BivariateAutSum::from_graphs(&graphs), order))
        }
    }
}

/// Weighted count of genus-1 orientable unicellular maps by vertex count,
/// from its two schemes with Catalan tree series `F`.
pub fn genus1_scheme_series(order: usize) -> Series {
    let f = tree_series(1, 1, order);
    let one = Series::one(order);
    let x = Series::x(order);
    let base = one.div(&(&one - &f)).expect("unit constant term");
    let u = &x * &base.pow(2);
    let w = one.div(&(&one - &u)).expect("unit constant term");
    let first = (&x * &base.pow(4)) * w.pow(2);
    let second = (&x.pow(2) * &base.pow(6)) * w.pow(3);
    &first.scale(&Rational::new(1.into(), 4.into())) + &second.scale(&Rational::new(1.into(), 6.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn tree_function_coefficients() {
        let t = tree_function(6);
        assert_eq!(
            t.coeffs(),
            &[rat(0, 1), rat(1, 1), rat(1, 1), rat(3, 2), rat(8, 3), rat(125, 24)]
        );
        let lhs = &t * &(-&t).exp().unwrap();
        assert_eq!(lhs, Series::x(6));
    }

    #[test]
    fn low_genus() {
        let w0 = w_series(0, 6, false).unwrap();
        assert_eq!(
            w0.coeffs(),
            &[rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 2), rat(2, 3), rat(25, 24)]
        );
        let w1 = w_series(1, 5, false).unwrap();
        assert_eq!(&w1.coeffs()[1..], &[rat(1, 2), rat(3, 4), rat(17, 12), rat(71, 24)]);
        let w2 = w_series(2, 5, false).unwrap();
        assert_eq!(&w2.coeffs()[1..], &[rat(1, 8), rat(7, 12), rat(101, 48), rat(83, 12)]);
        assert!(w_series(4, 5, false).is_err());
    }

    #[test]
    fn shipped_polynomial() {
        let bs = BivariateAutSum::shipped_g5();
        assert_eq!(bs.terms.len(), 8);
        let w5 = wg_from_bivariate(&bs, 4);
        assert_eq!(&w5.coeffs()[1..], &[rat(1, 3840), rat(7, 160), rat(27101, 23040)]);
        let single = BivariateAutSum { terms: vec![(1, 2, rat(1, 4))] };
        let t = tree_function(5);
        let expected = t
            .scale(&rat(1, 4))
            .div(&(&Series::one(5) - &t).pow(2))
            .unwrap();
        assert_eq!(wg_from_bivariate(&single, 5), expected);
    }

    #[test]
    fn scheme_series() {
        let s = genus1_scheme_series(7);
        assert_eq!(
            &s.coeffs()[1..],
            &[rat(1, 4), rat(5, 3), rat(35, 4), rat(42, 1), rat(385, 2), rat(858, 1)]
        );
    }
}
