//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

/// Floating point scalar the simulation can run on: `f32` or `f64`.
///
/// The tolerances quoted throughout the crate (1e-9 norms, 1e-12 pointwise
/// agreement) are `f64` figures; `f32` runs are useful for quick previews only.
pub trait Real: Float + FloatConst + FromPrimitive + FftNum + Debug + Display + Send + Sync {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub(crate) fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}
