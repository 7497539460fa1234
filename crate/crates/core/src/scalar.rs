//! The working-precision abstraction.
//!
//! Every evaluator is generic over [`Scalar`] so that the same code path can
//! run in hardware double or single precision for production, in
//! [`DoubleDouble`](crate::DoubleDouble) for reference values, and in the
//! flop-counting [`Counted`](crate::bench::Counted) type for cost accounting.
//! Conversions and comparisons are not arithmetic and must not be counted by
//! instrumented implementations.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    /// Promotes a loop index; never counted as a flop.
    fn from_usize(k: usize) -> Self;

    fn is_finite(self) -> bool;

    fn abs(self) -> Self {
        if self < Self::zero() {
            Self::zero() - self
        } else {
            self
        }
    }

    /// Half the gap between 1 and the next representable value.
    fn unit_roundoff() -> f64;
}

impl Scalar for f64 {
    #[inline(always)]
    fn zero() -> Self {
        0.0
    }
    #[inline(always)]
    fn one() -> Self {
        1.0
    }
    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline(always)]
    fn from_usize(k: usize) -> Self {
        k as f64
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
}

impl Scalar for f32 {
    #[inline(always)]
    fn zero() -> Self {
        0.0
    }
    #[inline(always)]
    fn one() -> Self {
        1.0
    }
    #[inline(always)]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline(always)]
    fn from_usize(k: usize) -> Self {
        k as f32
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f32::abs(self)
    }
    fn unit_roundoff() -> f64 {
        f32::EPSILON as f64 / 2.0
    }
}

pub(crate) fn positive_finite<S: Scalar>(x: S) -> bool {
    x.is_finite() && x > S::zero()
}
