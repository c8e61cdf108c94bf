use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Power series in `q` known exactly through `q^order`.
///
/// An order of [`TruncatedSeries::EXACT`] marks an exact polynomial.
/// Arithmetic keeps the smaller of the two orders, so products of series
/// truncated at `D` stay correct through `q^D`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
    order: usize,
}

impl TruncatedSeries {
    pub const EXACT: usize = usize::MAX;

    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        if order != Self::EXACT && coeffs.len() > order + 1 {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs, order }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c q^exp`.
    pub fn monomial(c: Rational, exp: usize, order: usize) -> Self {
        if order != Self::EXACT && exp > order {
            return Self::new(Vec::new(), order);
        }
        let mut v = vec![Rational::zero(); exp + 1];
        v[exp] = c;
        Self::new(v, order)
    }

    /// `1/(1 - q^n)` through `q^order`, `n >= 1`.
    pub fn geometric(n: usize, order: usize) -> Self {
        assert!(n >= 1 && order != Self::EXACT);
        let mut v = vec![Rational::zero(); order + 1];
        for k in (0..=order).step_by(n) {
            v[k] = int(1);
        }
        Self::new(v, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == Self::EXACT
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients of `q^0 ..= q^order` (or of the polynomial when exact).
    pub fn coefficients(&self) -> Vec<Rational> {
        let len = if self.is_exact() { self.coeffs.len() } else { self.order + 1 };
        (0..len).map(|k| self.coefficient(k)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    /// Multiply by `q^s`; a series known through `D` becomes known through `D + s`.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut v = vec![Rational::zero(); s];
        v.extend(self.coeffs.iter().cloned());
        let order = if self.is_exact() { Self::EXACT } else { self.order + s };
        Self::new(v, order)
    }

    /// Divide by `q^s`; the coefficients below `q^s` must vanish.
    pub fn shift_down(&self, s: usize) -> Result<Self> {
        if !self.is_exact() && s > self.order {
            return Err(Error::Evaluation(format!(
                "cannot divide a series known through q^{} by q^{s}",
                self.order
            )));
        }
        if let Some(k) = (0..s.min(self.coeffs.len())).find(|&k| !self.coeffs[k].is_zero()) {
            return Err(Error::Evaluation(format!(
                "series not divisible by q^{s}: coefficient of q^{k} is {}",
                self.coeffs[k]
            )));
        }
        let v = self.coeffs.iter().skip(s).cloned().collect();
        let order = if self.is_exact() { Self::EXACT } else { self.order - s };
        Ok(Self::new(v, order))
    }

    /// Multiplicative inverse; needs a nonzero constant term and finite order.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coefficient(0);
        if c0.is_zero() {
            return Err(Error::Pole("series with zero constant term is not invertible".into()));
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::constant(c0.recip(), Self::EXACT));
            }
            return Err(Error::Evaluation(
                "inverse of a non-constant exact polynomial needs a truncation order".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); self.order + 1];
        out[0] = inv0.clone();
        for n in 1..=self.order {
            let mut acc = Rational::zero();
            for k in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out[n] = -acc * &inv0;
        }
        Ok(Self::new(out, self.order))
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::constant(int(1), self.order);
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), self.order)
    }
}

/// Product of series, truncated at `q^order`. The empty product is `1`.
pub fn series_product<I>(terms: I, order: usize) -> TruncatedSeries
where
    I: IntoIterator<Item = TruncatedSeries>,
{
    terms
        .into_iter()
        .fold(TruncatedSeries::constant(int(1), order), |acc, t| &acc * &t)
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect();
        TruncatedSeries::new(v, self.order.min(rhs.order))
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect();
        TruncatedSeries::new(v, self.order.min(rhs.order))
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TruncatedSeries::new(Vec::new(), order);
        }
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = if order == TruncatedSeries::EXACT { full } else { full.min(order + 1) };
        let mut v = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                v[i + j] += a * b;
            }
        }
        TruncatedSeries::new(v, order)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.order)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

impl Zero for TruncatedSeries {
    fn zero() -> Self {
        Self::new(Vec::new(), Self::EXACT)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for TruncatedSeries {
    fn one() -> Self {
        Self::constant(int(1), Self::EXACT)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        if self.is_exact() {
            write!(f, "Series[{}]", cs.join(", "))
        } else {
            write!(f, "Series[{}; O(q^{})]", cs.join(", "), self.order + 1)
        }
    }
}
