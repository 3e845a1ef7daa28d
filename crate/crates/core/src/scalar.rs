//! Scalar field abstraction shared by every module.
//!
//! Everything in the crate is written against [`Scalar`], so the same code runs
//! over exact rationals (the default, [`crate::Rational`]), machine rationals
//! such as `Ratio<i64>`, or floats. Rank decisions compare against exact zero,
//! which is only meaningful for exact fields; float instantiations are useful
//! for quick experiments, not for certified dimensions.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// A field element usable by the linear algebra and Lie machinery.
///
/// Arithmetic goes through borrowed operands so big rationals are not cloned
/// on every operation.
pub trait Scalar: Clone + Debug + Display + PartialEq + Zero + One + FromPrimitive + Send + Sync + 'static {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Field division. Callers never divide by zero.
    fn over(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar field")
    }

    /// `1/n` for a small positive integer.
    fn reciprocal_of(n: i64) -> Self {
        Self::one().over(&Self::from_int(n))
    }
}

impl<T> Scalar for T
where
    T: Clone + Debug + Display + PartialEq + Zero + One + FromPrimitive + Send + Sync + 'static,
    for<'a> &'a T: Add<&'a T, Output = T>
        + Sub<&'a T, Output = T>
        + Mul<&'a T, Output = T>
        + Div<&'a T, Output = T>
        + Neg<Output = T>,
{
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// `acc += a * b` without an intermediate clone of `acc`.
pub(crate) fn add_product<S: Scalar>(acc: &mut S, a: &S, b: &S) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    *acc = acc.plus(&a.times(b));
}

/// `y += c * x` over slices of equal length.
pub(crate) fn axpy<S: Scalar>(y: &mut [S], c: &S, x: &[S]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.plus(&c.times(xi));
        }
    }
}

pub(crate) fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn zeros<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}
