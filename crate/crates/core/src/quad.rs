//! Trapezoid quadrature along straight lines in the complex plane.
//!
//! The integrands met here are analytic in a strip around the contour and
//! decay like a Gaussian or an exponential along it, which is exactly the
//! setting where the equispaced trapezoid rule converges geometrically in
//! `1/h`. The error estimate compares the step-`h` sum with the step-`2h`
//! sum built from the even nodes of the same window.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_i64, is_finite, lit, CompensatedSum, Real};
use crate::twofold::TwofoldComplex;

/// Oriented straight line `ζ(u) = anchor + e^{i angle} u`, `u ∈ ℝ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineContour<T: Real> {
    anchor: Complex<T>,
    angle: T,
}

impl<T: Real> LineContour<T> {
    /// The angle is normalized to `(-π, π]`.
    pub fn new(anchor: Complex<T>, angle: T) -> Self {
        let two_pi = lit::<T>(2.0) * T::PI();
        let mut a = angle % two_pi;
        if a <= -T::PI() {
            a += two_pi;
        } else if a > T::PI() {
            a -= two_pi;
        }
        Self { anchor, angle: a }
    }

    /// The real axis traversed left to right.
    pub fn real_axis() -> Self {
        Self::new(Complex::new(T::zero(), T::zero()), T::zero())
    }

    pub fn anchor(&self) -> Complex<T> {
        self.anchor
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    /// Unit tangent `e^{i angle}`.
    pub fn direction(&self) -> Complex<T> {
        Complex::new(self.angle.cos(), self.angle.sin())
    }

    pub fn point(&self, u: T) -> Complex<T> {
        self.anchor + self.direction() * u
    }

    /// Same line traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        Self::new(self.anchor, self.angle + T::PI())
    }

    /// Same direction, anchor moved to `anchor`.
    pub fn with_anchor(&self, anchor: Complex<T>) -> Self {
        Self { anchor, angle: self.angle }
    }
}

/// Truncation window, step and budget for one trapezoid run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec<T: Real> {
    /// Integrate over `u ∈ [-half_width, half_width]`.
    pub half_width: T,
    /// Trapezoid step `h`.
    pub step: T,
    /// Target relative error.
    pub tol: T,
    /// Maximum number of integrand evaluations.
    pub max_nodes: usize,
}

impl<T: Real> QuadratureSpec<T> {
    /// Builds a spec whose budget allows one step halving.
    pub fn new(half_width: T, step: T, tol: T) -> Result<Self> {
        if !(half_width > T::zero()) || !(step > T::zero()) || !(tol > T::zero()) {
            return Err(Error::Precondition(format!(
                "half_width, step and tol must be positive (got {half_width}, {step}, {tol})"
            )));
        }
        let spec = Self { half_width, step, tol, max_nodes: 0 };
        Ok(Self { max_nodes: 2 * spec.base_nodes(), ..spec })
    }

    /// Number of nodes of the step-`h` grid, `2 floor(T/h) + 1`.
    pub fn base_nodes(&self) -> usize {
        2 * self.half_count() as usize + 1
    }

    fn half_count(&self) -> i64 {
        (self.half_width / self.step).floor().to_i64().unwrap_or(i64::MAX / 4)
    }

    /// Caps the node budget, e.g. from an environment override.
    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_half_width(mut self, half_width: T) -> Self {
        let grow = (half_width / self.half_width).max(T::one());
        self.half_width = half_width;
        self.max_nodes = (lit::<T>(self.max_nodes as f64) * grow).ceil().to_usize().unwrap_or(usize::MAX);
        self
    }

    pub fn with_step(mut self, step: T) -> Self {
        let grow = (self.step / step).max(T::one());
        self.step = step;
        self.max_nodes = (lit::<T>(self.max_nodes as f64) * grow).ceil().to_usize().unwrap_or(usize::MAX);
        self
    }
}

/// Value of a quadrature-backed evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult<T: Real> {
    pub value: Complex<T>,
    /// Estimated relative error, always `>= 0`.
    pub err_estimate: T,
    /// Integrand evaluations (or series terms) spent.
    pub nodes: usize,
    /// Set when `err_estimate` exceeds the requested tolerance.
    pub degraded: bool,
}

impl<T: Real> EvalResult<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Self { value, err_estimate: T::zero(), nodes: 0, degraded: false }
    }

    /// Multiplies the value by a prefactor, keeping the error bookkeeping.
    pub fn scaled(self, factor: Complex<T>) -> Self {
        Self { value: self.value * factor, ..self }
    }
}

/// How fast the integrand decays along the contour: `e^{-c u²}` or
/// `e^{-c |u|}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass<T: Real> {
    Gaussian(T),
    Exponential(T),
}

/// Picks a truncation window and step for a decay class.
///
/// `Gaussian(c)`: `T = √(ln(1/tol)/c) + 2`; `Exponential(c)`:
/// `T = ln(1/tol)/c + 5`. The half width is rounded up to an integer so
/// that every power-of-two step divides it. The step is `1/16` for
/// `tol >= 1e-8` and `1/32` below.
pub fn choose_spec<T: Real>(decay: DecayClass<T>, tol: T) -> Result<QuadratureSpec<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Precondition(format!("tol must be positive, got {tol}")));
    }
    let log_inv_tol = (T::one() / tol).ln().max(T::zero());
    let half_width = match decay {
        DecayClass::Gaussian(c) if c > T::zero() => (log_inv_tol / c).sqrt() + lit(2.0),
        DecayClass::Exponential(c) if c > T::zero() => log_inv_tol / c + lit(5.0),
        _ => return Err(Error::Precondition("decay rate must be positive".into())),
    };
    let step = if tol >= lit(1e-8) { lit(1.0 / 16.0) } else { lit(1.0 / 32.0) };
    QuadratureSpec::new(half_width.ceil(), step, tol)
}

/// Trapezoid integral of `f` along `contour`, `∫ f(ζ) dζ`.
pub fn integrate_line<T, F>(mut f: F, contour: &LineContour<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    try_integrate_line(|z| Ok(f(z)), contour, spec)
}

/// Like [`integrate_line`], for integrands that can fail.
pub fn try_integrate_line<T, F>(mut f: F, contour: &LineContour<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(Complex<T>) -> Result<Complex<T>>,
{
    try_integrate_param(|u| f(contour.point(u)), contour, spec)
}

/// `∫ f dζ` along `contour` with `f` given as a function of the line
/// parameter `u`, so callers can form `ζ(u)` more accurately themselves.
/// The nodes `u = kh` are exact when `h` is a power of two.
pub fn try_integrate_param<T, F>(f: F, contour: &LineContour<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<Complex<T>>,
{
    trapezoid::<T, CompensatedSum<T>, F>(f, contour, spec)
}

/// [`try_integrate_param`] with double-double samples and sums, for
/// integrands whose magnitude exceeds the integral by more than `1/ε`
/// would tolerate.
pub fn try_integrate_param_twofold<T, F>(
    f: F,
    contour: &LineContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(T) -> Result<TwofoldComplex<T>>,
{
    trapezoid::<T, TwofoldComplex<T>, F>(f, contour, spec)
}

/// Running sum of trapezoid samples.
trait Accumulator<T: Real>: Copy {
    type Sample;
    fn empty() -> Self;
    fn push(&mut self, v: Self::Sample);
    fn finite(v: &Self::Sample) -> bool;
    /// `(Σ parts) h`, rounded to `T`.
    fn total(parts: &[Self], h: T) -> Complex<T>;
}

impl<T: Real> Accumulator<T> for CompensatedSum<T> {
    type Sample = Complex<T>;
    fn empty() -> Self {
        CompensatedSum::new()
    }
    fn push(&mut self, v: Complex<T>) {
        self.add(v);
    }
    fn finite(v: &Complex<T>) -> bool {
        is_finite(*v)
    }
    fn total(parts: &[Self], h: T) -> Complex<T> {
        parts.iter().map(|p| p.value()).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) * h
    }
}

impl<T: Real> Accumulator<T> for TwofoldComplex<T> {
    type Sample = TwofoldComplex<T>;
    fn empty() -> Self {
        TwofoldComplex::zero()
    }
    fn push(&mut self, v: Self) {
        *self = *self + v;
    }
    fn finite(v: &Self) -> bool {
        is_finite(v.to_complex())
    }
    fn total(parts: &[Self], h: T) -> Complex<T> {
        let sum = parts.iter().fold(TwofoldComplex::zero(), |a, &b| a + b);
        (sum * TwofoldComplex::from_real(h)).to_complex()
    }
}

fn trapezoid<T, A, F>(mut f: F, contour: &LineContour<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    A: Accumulator<T>,
    F: FnMut(T) -> Result<A::Sample>,
{
    let n = spec.half_count();
    let needed = spec.base_nodes();
    if needed > spec.max_nodes {
        return Err(Error::BudgetExceeded { needed, budget: spec.max_nodes });
    }
    let dir = contour.direction();
    let h = spec.step;

    let mut sample = |k: i64, u: T| -> Result<A::Sample> {
        let v = f(u)?;
        if A::finite(&v) {
            Ok(v)
        } else {
            Err(Error::NonFinite { index: k, node: u.to_f64().unwrap_or(f64::NAN) })
        }
    };

    let mut even = A::empty();
    let mut odd = A::empty();
    for k in -n..=n {
        let v = sample(k, from_i64::<T>(k) * h)?;
        if k % 2 == 0 {
            even.push(v);
        } else {
            odd.push(v);
        }
    }
    let mut nodes = needed;
    let coarse = A::total(&[even], h + h);
    let mut fine = A::total(&[even, odd], h);
    let mut err = relative_gap(fine, coarse);

    if err > spec.tol && nodes + 2 * n as usize <= spec.max_nodes {
        // one halving: midpoints of the step-h grid
        let mut mid = A::empty();
        for k in -n..n {
            let u = (from_i64::<T>(k) + lit(0.5)) * h;
            mid.push(sample(k, u)?);
        }
        nodes += 2 * n as usize;
        let finer = A::total(&[even, odd, mid], h * lit(0.5));
        err = relative_gap(finer, fine);
        fine = finer;
    }

    Ok(EvalResult { value: fine * dir, err_estimate: err, nodes, degraded: err > spec.tol })
}

/// `∫_{-∞}^{∞} f(x) dx` along the real axis.
pub fn integrate_real_line<T, F>(f: F, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(Complex<T>) -> Complex<T>,
{
    integrate_line(f, &LineContour::real_axis(), spec)
}

/// Fallible variant of [`integrate_real_line`].
pub fn try_integrate_real_line<T, F>(f: F, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(Complex<T>) -> Result<Complex<T>>,
{
    try_integrate_line(f, &LineContour::real_axis(), spec)
}

pub(crate) fn relative_gap<T: Real>(fine: Complex<T>, coarse: Complex<T>) -> T {
    let gap = (fine - coarse).norm();
    let scale = fine.norm();
    if scale > T::zero() {
        gap / scale
    } else {
        gap
    }
}
