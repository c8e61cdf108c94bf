//! Exact scalars, Laurent polynomials, truncated power series and dense
//! matrices over exact commutative rings.
//!
//! Everything here is immutable value arithmetic. The only floating point
//! type is [`ComplexF`], used by the on-shell Bethe checks.

mod laurent;
mod matrix;
mod rational;
mod series;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use laurent::{laurent_derivative, LaurentPoly};
pub use matrix::{rational_det, RingMatrix};
pub use rational::{
    binomial, format_rational, int, parse_rational, parse_rational_list, pow, rat, upow,
    Rational,
};
pub use series::{series_product, TruncatedSeries};

/// Double-precision complex number.
pub type ComplexF = num_complex::Complex64;

/// Commutative ring element usable as a matrix entry.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}
