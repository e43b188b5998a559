//! Number backends: exact rationals and tolerance-compared `f64`.

use core::cmp::Ordering;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact scalar type.
pub type Rational = BigRational;

/// Absolute/relative tolerance used by the `f64` backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Field operations plus the comparisons the algorithms need.
///
/// For `f64`, `sign` and `approx_eq` treat values within
/// [`DEFAULT_TOLERANCE`] (scaled by magnitude) as equal.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Sign of the value, with a tolerance band around zero for floats.
    fn sign(&self) -> Ordering;

    fn abs(&self) -> Self;

    /// `num / den`. Panics on `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn approx_eq(&self, other: &Self) -> bool;

    /// Three-way comparison honoring the backend tolerance.
    fn cmp_tol(&self, other: &Self) -> Ordering {
        if self.approx_eq(other) {
            Ordering::Equal
        } else {
            (self.clone() - other.clone()).sign()
        }
    }

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sign(&self) -> Ordering {
        if Zero::is_zero(self) {
            Ordering::Equal
        } else if Signed::is_positive(self) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sign(&self) -> Ordering {
        if libm::fabs(*self) <= DEFAULT_TOLERANCE {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn approx_eq(&self, other: &Self) -> bool {
        approx_eq_f64(*self, *other, DEFAULT_TOLERANCE)
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq_f64(a: f64, b: f64, tol: f64) -> bool {
    let scale = 1.0f64.max(libm::fabs(a)).max(libm::fabs(b));
    libm::fabs(a - b) <= tol * scale
}

/// Convert between backends (exact values are rounded when going to `f64`).
pub trait FromScalar<T> {
    fn from_scalar(value: &T) -> Self;
}

impl FromScalar<BigRational> for f64 {
    fn from_scalar(value: &BigRational) -> Self {
        Scalar::to_f64(value)
    }
}

impl FromScalar<BigRational> for BigRational {
    fn from_scalar(value: &BigRational) -> Self {
        value.clone()
    }
}

impl FromScalar<f64> for f64 {
    fn from_scalar(value: &f64) -> Self {
        *value
    }
}

/// Exact rational constructor.
pub fn rat(num: i64, den: i64) -> Rational {
    <Rational as Scalar>::ratio(num, den)
}
