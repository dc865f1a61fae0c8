use std::fmt::Debug;

use num_traits::{Num, Signed, ToPrimitive};

use crate::{BigRational, Rational};

/// Field-like scalar the exact and floating-point code paths share.
///
/// Implemented for `f32`, `f64`, [`Rational`] and [`BigRational`].
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Send + Sync + 'static {
    fn from_count(n: usize) -> Self;

    fn as_f64(&self) -> f64;

    fn half() -> Self {
        Self::one() / Self::from_count(2)
    }

    fn is_probability(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }
}

impl Scalar for f64 {
    fn from_count(n: usize) -> Self {
        n as f64
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_count(n: usize) -> Self {
        n as f32
    }
    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational {
    fn from_count(n: usize) -> Self {
        Rational::from_integer(n as i64)
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_count(n: usize) -> Self {
        BigRational::from_integer(n.into())
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
