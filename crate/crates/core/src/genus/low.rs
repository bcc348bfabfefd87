use num_bigint::BigInt;

use crate::algebra::{Rational, Series};
use crate::moments::{beta, block_wick, nonloop_complex_moment};
use crate::treeseries::tree_series;

/// `G_0^(m) = (x / 2m) int x^-2 (F_1 - x) dx`, i.e. `[x^(v+1)] = C_v / (2mv)`.
pub fn g0_series(m: usize, order: usize) -> Series {
    if order < 2 {
        return Series::zero(order);
    }
    let f1 = tree_series(m, 1, order);
    let inner = (&f1 - &Series::x(order)).shift_down(2).expect("F_1 - x starts at x^2");
    inner
        .integrate(1)
        .shift_up(1)
        .scale(&Rational::new(BigInt::from(1), BigInt::from(2 * m)))
}

/// `G_1^(m)` in terms of `F = F_{2m}^(m)`.
pub fn g1_series(m: usize, order: usize) -> Series {
    let f = tree_series(m, 2 * m, order);
    let two_m = BigInt::from(2 * m);
    let mut out = f.scale(&Rational::new(BigInt::from(1), two_m.clone()));
    let pair = nonloop_complex_moment(m, 2 * m, 2 * m);
    out = &out + &(&f * &f).scale(&Rational::new(pair, BigInt::from(4 * m)));
    let u = f.scale(&beta(m, m).expect("m <= 2m"));
    let cube = u.geometric_tail(3).expect("F has zero constant term");
    out = &out + &cube.scale(&Rational::new(BigInt::from(1), two_m));
    for a in 0..=2 * m {
        let b = 2 * m - a;
        if a == b || (a as i64 - b as i64).rem_euclid(4) != 0 {
            continue;
        }
        let ua = f.scale(&beta(m, a).expect("a <= 2m"));
        let ub = f.scale(&beta(m, b).expect("b <= 2m"));
        let (mut pa, mut pb) = (ua.pow(3), ub.pow(3));
        for k in 3..order.max(3) + 1 {
            let w = Rational::new(BigInt::from(1), BigInt::from(2 * k as i64 * (a as i64 - b as i64)));
            out = &out + &(&pa - &pb).scale(&w);
            pa = &pa * &ua;
            pb = &pb * &ub;
        }
    }
    out
}

/// `[x] G_g^(m) = W_{2m}(2mg) / 2mg` for `g >= 2`.
pub fn leading_coefficient(m: usize, g: usize) -> Rational {
    Rational::new(block_wick(2 * m, 2 * m * g), BigInt::from(2 * m * g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn genus_zero() {
        let s = g0_series(1, 7);
        assert_eq!(
            s.coeffs(),
            &[rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2), rat(5, 6), rat(7, 4), rat(21, 5)]
        );
        let s = g0_series(2, 7);
        assert_eq!(&s.coeffs()[2..], &[rat(1, 4), rat(3, 4), rat(19, 4), rat(339, 8), rat(927, 2)]);
        let s = g0_series(3, 5);
        assert_eq!(&s.coeffs()[2..], &[rat(1, 6), rat(5, 3), rat(430, 9)]);
    }

    #[test]
    fn genus_one() {
        let s = g1_series(2, 5);
        assert_eq!(&s.coeffs()[1..], &[rat(1, 4), rat(39, 8), rat(1057, 12), rat(26185, 16)]);
        let s = g1_series(1, 6);
        assert_eq!(&s.coeffs()[1..], &[rat(1, 2), rat(3, 2), rat(5, 1), rat(35, 2), rat(63, 1)]);
        let s = g1_series(3, 4);
        assert_eq!(&s.coeffs()[1..], &[rat(1, 6), rat(29, 1), rat(3243, 1)]);
    }

    #[test]
    fn leading() {
        assert_eq!(leading_coefficient(2, 2), rat(35, 8));
        assert_eq!(leading_coefficient(1, 2), rat(3, 4));
        assert_eq!(leading_coefficient(1, 3), rat(5, 2));
    }
}
