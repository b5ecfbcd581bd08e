//! Scalar abstraction for the exact vector-space solver.
//!
//! Implemented for `num_rational::Ratio<I>` over any signed integer type:
//! `Ratio<i64>` for small fixtures, `BigRational` for everything else.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact ordered field.
pub trait ExactScalar:
    Clone + PartialOrd + Num + Signed + Debug + Display + Send + Sync + 'static
{
    /// Numerator and denominator rendered in base 10, denominator positive.
    fn to_fraction_parts(&self) -> (String, String);

    fn from_i64(value: i64) -> Self;
}

impl<I> ExactScalar for Ratio<I>
where
    I: Integer + Clone + Signed + Debug + Display + Send + Sync + From<i64> + 'static,
{
    fn to_fraction_parts(&self) -> (String, String) {
        let reduced = self.reduced();
        (reduced.numer().to_string(), reduced.denom().to_string())
    }

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(I::from(value))
    }
}

/// Formats a scalar as `p/q`, or `p` when the denominator is one.
pub fn format_fraction<T: ExactScalar>(value: &T) -> String {
    let (numer, denom) = value.to_fraction_parts();
    if denom == "1" {
        numer
    } else {
        format!("{numer}/{denom}")
    }
}
