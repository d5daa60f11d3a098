//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in target scalar")
}

#[inline]
pub(crate) fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("integer representable in target scalar")
}

/// `ln(x)` for `x` in `(0, 1]` given the complement `1 - x` as well; picks the
/// accurate branch near 1.
#[inline]
pub(crate) fn ln_unit<T: Real>(x: T, complement: T) -> T {
    if x < lit(0.5) {
        x.ln()
    } else {
        (-complement).ln_1p()
    }
}
