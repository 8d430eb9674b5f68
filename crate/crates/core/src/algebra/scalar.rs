use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Ring element usable as a matrix or tensor entry.
///
/// Implemented for `i64` (exact integer tensors), [`BigRational`] (exact
/// linear algebra), `f64` and [`Complex64`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Absolute value as a float, used for residuals and pivoting.
    fn magnitude(&self) -> f64;

    fn from_i64(v: i64) -> Self;
}

/// A [`Scalar`] with exact or floating division.
pub trait Field: Scalar + Div<Output = Self> {}

impl<T: Scalar + Div<Output = T>> Field for T {}

impl Scalar for i64 {
    fn magnitude(&self) -> f64 {
        self.unsigned_abs() as f64
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Scalar for BigRational {
    fn magnitude(&self) -> f64 {
        let num = self.numer().to_f64().unwrap_or(f64::INFINITY);
        let den = self.denom().to_f64().unwrap_or(f64::INFINITY);
        (num / den).abs()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Exact rational from a small fraction.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational equal to a finite `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}
