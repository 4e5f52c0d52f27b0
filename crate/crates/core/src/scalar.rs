//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All algorithms are written against [`Real`] and operate on
//! `Complex<T>`. Accuracy targets quoted in the docs refer to `f64`; the
//! `f32` instantiation runs the same code paths at single precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in the target float type")
}

/// Converts an integer into `T`.
#[inline]
pub fn from_i64<T: Real>(n: i64) -> T {
    T::from_i64(n).expect("integer representable in the target float type")
}

#[inline]
pub(crate) fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative distance `|a - b| / max(|a|, |b|, tiny)`.
pub fn rel_diff<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let scale = a.norm().max(b.norm()).max(T::min_positive_value());
    (a - b).norm() / scale
}

/// Neumaier-compensated complex accumulator. Summation order is the call
/// order, so results are reproducible bit for bit.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T: Real> {
    sum: Complex<T>,
    comp: Complex<T>,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: Complex::new(T::zero(), T::zero()), comp: Complex::new(T::zero(), T::zero()) }
    }

    #[inline]
    pub fn add(&mut self, x: Complex<T>) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }
}

#[inline]
fn neumaier<T: Real>(sum: T, x: T, comp: &mut T) -> T {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}
