use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Truncated power series in `x` with exact rational coefficients.
///
/// `order` is exclusive: coefficients of `x^0 .. x^(order-1)` are known and
/// everything from `x^order` on is unknown. Binary operations truncate to the
/// smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series::new((0..order).map(f).collect())
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Series::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![Rational::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Series::monomial(0, Rational::one(), order)
    }

    pub fn x(order: usize) -> Self {
        Series::monomial(1, Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Series::monomial(0, c, order)
    }

    /// `c x^power`, truncated to `order`.
    pub fn monomial(power: usize, c: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        if power < order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Known coefficient of `x^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: &BigInt) -> Series {
        self.scale(&Rational::from_integer(c.clone()))
    }

    /// Multiply by `x^k`. The order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(coeffs)
    }

    /// Divide by `x^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!(
                "series is not divisible by x^{k}"
            )));
        }
        Ok(Series::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn inverse(&self) -> Result<Series> {
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Series::new(out))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner)`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        let n = self.order().min(inner.order());
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroInnerConstant);
        }
        let inner = inner.truncate(n);
        // Horner from the top coefficient down.
        let mut acc = Series::zero(n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g) = g(self) = x`.
    pub fn reversion(&self) -> Result<Series> {
        let n = self.order();
        if n >= 1 && !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if n < 2 || self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        // Newton-free fixed point: g = (x - (f(g) - f1 g)) / f1, one new
        // coefficient per pass.
        let f1_inv = self.coeffs[1].recip();
        let mut g = Series::x(n).scale(&f1_inv);
        for k in 2..n {
            let fg = self.compose(&g)?;
            let err = &fg.coeffs[k];
            g.coeffs[k] = &g.coeffs[k] - err * &f1_inv;
        }
        Ok(g)
    }

    /// Termwise antiderivative with zero constant. Powers below
    /// `lowest_power` are discarded. The order grows by one.
    pub fn integrate(&self, lowest_power: usize) -> Series {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rational::from_integer(BigInt::from(k + 1)));
        }
        for c in coeffs.iter_mut().take(lowest_power) {
            *c = Rational::zero();
        }
        Series::new(coeffs)
    }

    pub fn derivative(&self) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// `sum_{k >= n} f^k / k` for `f` with zero constant term.
    pub fn log_tail(&self, n: usize) -> Result<Series> {
        let order = self.order();
        if order > 0 && !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if n == 0 {
            return Err(Error::InvalidArgument("log_tail needs n >= 1".into()));
        }
        let mut out = Series::zero(order);
        let mut power = self.pow(n as u32);
        for k in n..order.max(n) + order {
            if power.is_zero() {
                break;
            }
            let w = Rational::new(BigInt::one(), BigInt::from(k));
            out = &out + &power.scale(&w);
            power = &power * self;
        }
        Ok(out)
    }

    /// `f^k / (1 - f)` for `f` with zero constant term.
    pub fn geometric_tail(&self, k: u32) -> Result<Series> {
        let order = self.order();
        if order > 0 && !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let denom = &Series::one(order) - self;
        self.pow(k).div(&denom)
    }

    pub fn exp(&self) -> Result<Series> {
        let order = self.order();
        if order > 0 && !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        // e' = f' e, solved coefficient by coefficient.
        let d = self.derivative();
        let mut e = vec![Rational::zero(); order];
        if order > 0 {
            e[0] = Rational::one();
        }
        for k in 1..order {
            let mut acc = Rational::zero();
            for j in 0..k {
                acc += &d.coeffs[j] * &e[k - 1 - j];
            }
            e[k] = acc / Rational::from_integer(BigInt::from(k));
        }
        Ok(Series::new(e))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": "x",
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Series> {
        let bad = |why: &str| Error::Parse(format!("series JSON: {why}"));
        let coeffs = value
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| bad("missing coeffs"))?;
        let coeffs = coeffs
            .iter()
            .map(|c| match c {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(bad("coefficient is not a string")),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(order) = value.get("order").and_then(|o| o.as_u64()) {
            if order as usize != coeffs.len() {
                return Err(bad("order does not match coefficient count"));
            }
        }
        Ok(Series::new(coeffs))
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Series::from_json(&value).map_err(D::Error::custom)
    }
}

/// Human form such as `35x/8 + 1295x^2/4`, without the truncation marker.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let numer = a.numer();
            let head = if k > 0 && numer.is_one() {
                var
            } else {
                format!("{numer}{var}")
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
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}
