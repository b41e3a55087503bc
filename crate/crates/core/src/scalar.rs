//! Scalar abstraction shared by every kernel in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar the simulator is generic over: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into this scalar type.
    fn from_f64_lossy(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).expect("finite f64 converts to any float type")
    }

    /// Widens to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A complex amplitude over the scalar `T`.
pub type Amplitude<T> = Complex<T>;

pub(crate) fn c<T: Real>(re: T, im: T) -> Amplitude<T> {
    Complex::new(re, im)
}

pub(crate) fn one<T: Real>() -> Amplitude<T> {
    c(T::one(), T::zero())
}

pub(crate) fn zero<T: Real>() -> Amplitude<T> {
    c(T::zero(), T::zero())
}

pub(crate) fn imag_unit<T: Real>() -> Amplitude<T> {
    c(T::zero(), T::one())
}

/// `e^{i theta}`.
pub(crate) fn cis<T: Real>(theta: T) -> Amplitude<T> {
    c(theta.cos(), theta.sin())
}
