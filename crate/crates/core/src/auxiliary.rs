//! Three integral representations of the Riemann auxiliary function
//!
//! ```text
//! R(s) = ∫_{0↙1} x^{-s} e^{πix²} / (e^{πix} - e^{-πix}) dx.
//! ```
//!
//! * [`r_definition`] integrates the definition along `x = ½ - ωu`.
//! * [`r_hermite`] uses
//!   `R(s) = -2^s π^{s/2} e^{πis/4} ∫ e^{-πx²} H_{-s}(x√π) / (1 + e^{-2πωx}) dx`
//!   over the real line.
//! * [`r_gabcke_u`] uses
//!   `R(s) = 2^{s/2} π^{s/2} e^{πi(s-1)/4} ∫_{-½↘½} e^{-πiu²/2+πiu} / (2i cos πu) U(s-½, √(2π) ω u) du`
//!   along `u = e^{-iπ/4} v`, which crosses the real axis at 0.
//!
//! On both the Hermite and U lines the integrand falls off like a Gaussian
//! on one side only. On the other side the Hermite factor grows like
//! `e^{πx²}` and cancels the Gaussian, so the decay comes from the
//! denominator alone: `e^{-√2π|x|}`. The default specs therefore use the
//! exponential class.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hermite::{parabolic_u_with, HermiteEngine, HermiteMethod};
use crate::quad::{choose_spec, try_integrate_line, DecayClass, EvalResult, LineContour, QuadratureSpec};
use crate::scalar::{lit, real, Real};
use crate::special::{cospi, omega, principal_pow, real_pow, sinpi};

/// One of the representations of `R(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RMethod {
    Definition,
    HermiteForm,
    GabckeUForm,
}

impl RMethod {
    pub const ALL: [RMethod; 3] = [RMethod::Definition, RMethod::HermiteForm, RMethod::GabckeUForm];

    pub fn name(self) -> &'static str {
        match self {
            RMethod::Definition => "Definition",
            RMethod::HermiteForm => "HermiteForm",
            RMethod::GabckeUForm => "GabckeUForm",
        }
    }

    /// Evaluates `R(s)` by this representation with [`default_spec`].
    pub fn eval<T: Real>(self, s: Complex<T>, tol: T) -> Result<EvalResult<T>> {
        let spec = default_spec(self, s, tol)?;
        self.eval_with(s, &spec, &HermiteEngine::default())
    }

    /// Evaluates `R(s)` with an explicit spec and Hermite engine.
    pub fn eval_with<T: Real>(
        self,
        s: Complex<T>,
        spec: &QuadratureSpec<T>,
        engine: &HermiteEngine<T>,
    ) -> Result<EvalResult<T>> {
        match self {
            RMethod::Definition => r_definition(s, spec),
            RMethod::HermiteForm => r_hermite_with(s, spec, engine),
            RMethod::GabckeUForm => r_gabcke_u_with(s, spec, engine),
        }
    }
}

/// Line `x = ½ - ωu` of the definition.
pub fn definition_contour<T: Real>() -> LineContour<T> {
    LineContour::new(real(lit(0.5)), lit::<T>(-0.75) * T::PI())
}

/// Line `u = e^{-iπ/4} v` of the U form.
pub fn gabcke_contour<T: Real>() -> LineContour<T> {
    LineContour::new(Complex::new(T::zero(), T::zero()), lit::<T>(-0.25) * T::PI())
}

/// Quadrature spec for `R(s)` by `method` at tolerance `tol`.
///
/// The integrands reach about `e^{c|Im s|}` times `|R(s)|` (`c = 3π/4` on
/// the definition line, `π/4` otherwise), so the truncation tolerance is
/// tightened by that factor.
pub fn default_spec<T: Real>(method: RMethod, s: Complex<T>, tol: T) -> Result<QuadratureSpec<T>> {
    let t = s.im.abs();
    let (decay, growth) = match method {
        RMethod::Definition => (DecayClass::Gaussian(T::PI()), lit::<T>(0.75) * T::PI()),
        RMethod::HermiteForm | RMethod::GabckeUForm => {
            (DecayClass::Exponential(T::SQRT_2() * T::PI()), lit::<T>(0.25) * T::PI())
        }
    };
    let floor = lit::<T>(1e-300);
    let inner = (tol * (-growth * t).exp()).max(floor);
    let spec = choose_spec(decay, inner)?;
    Ok(QuadratureSpec { tol, ..spec })
}

/// `-2^s π^{s/2} e^{πis/4}`.
pub fn hermite_prefactor<T: Real>(s: Complex<T>) -> Complex<T> {
    let quarter_pi_i = Complex::new(T::zero(), T::FRAC_PI_4());
    -(real_pow(lit::<T>(2.0), s) * real_pow(T::PI(), s * lit::<T>(0.5)) * (s * quarter_pi_i).exp())
}

/// `2^{s/2} π^{s/2} e^{πi(s-1)/4}`.
pub fn gabcke_prefactor<T: Real>(s: Complex<T>) -> Complex<T> {
    let quarter_pi_i = Complex::new(T::zero(), T::FRAC_PI_4());
    let half = s * lit::<T>(0.5);
    real_pow(lit::<T>(2.0), half) * real_pow(T::PI(), half) * ((s - T::one()) * quarter_pi_i).exp()
}

/// `R(s)` from the defining integral along `x = ½ - ωu`.
pub fn r_definition<T: Real>(s: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    r_definition_on(s, &definition_contour(), spec)
}

/// `R(s)` from the defining integral along any line of the definition's
/// direction that crosses `(0, 1)`.
pub fn r_definition_on<T: Real>(
    s: Complex<T>,
    contour: &LineContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    let pi_i = Complex::new(T::zero(), T::PI());
    let two_i = Complex::new(T::zero(), lit(2.0));
    try_integrate_line(|x| Ok(principal_pow(x, -s) * (pi_i * x * x).exp() / (two_i * sinpi(x))), contour, spec)
}

/// `1 / (1 + e^{-w})` without overflow.
fn logistic<T: Real>(w: Complex<T>) -> Complex<T> {
    let one = real::<T>(T::one());
    if w.re >= T::zero() {
        one / (one + (-w).exp())
    } else {
        let e = w.exp();
        e / (e + one)
    }
}

fn hermite_method_for<T: Real>(nu: Complex<T>) -> HermiteMethod {
    let integer = nu.im == T::zero() && nu.re.fract() == T::zero();
    if integer && nu.re >= T::zero() {
        // Hermite polynomial, exact
        HermiteMethod::Series
    } else if nu.re >= T::zero() {
        HermiteMethod::RecurrenceLift
    } else {
        HermiteMethod::Auto
    }
}

/// Tolerance for the special-function values inside an outer quadrature.
fn inner_tol<T: Real>(tol: T) -> T {
    (tol * lit(1e-2)).max(lit(1e-14))
}

/// Folds the per-node special-function error into a quadrature result.
fn with_inner_error<T: Real>(mut res: EvalResult<T>, abs_err: T, step: T, tol: T) -> EvalResult<T> {
    let scale = res.value.norm();
    if scale > T::zero() {
        res.err_estimate = res.err_estimate.max(abs_err * step / scale);
    }
    res.degraded = res.err_estimate > tol;
    res
}

/// `R(s)` from the Hermite-function integral over the real line.
pub fn r_hermite<T: Real>(s: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    r_hermite_with(s, spec, &HermiteEngine::default())
}

/// [`r_hermite`] with an explicit Hermite engine.
pub fn r_hermite_with<T: Real>(
    s: Complex<T>,
    spec: &QuadratureSpec<T>,
    engine: &HermiteEngine<T>,
) -> Result<EvalResult<T>> {
    let nu = -s;
    let method = hermite_method_for(nu);
    let tol = inner_tol(spec.tol);
    let sqrt_pi = T::PI().sqrt();
    let two_pi_omega = omega::<T>() * (T::PI() * lit(2.0));
    let mut abs_err = T::zero();
    let res = try_integrate_line(
        |x| {
            let h = engine.eval_weighted(nu, x * sqrt_pi, method, tol, T::one())?;
            let v = h.value() * logistic(two_pi_omega * x);
            abs_err += v.norm() * h.result.err_estimate;
            Ok(v)
        },
        &LineContour::real_axis(),
        spec,
    )?;
    Ok(with_inner_error(res.scaled(hermite_prefactor(s)), abs_err * hermite_prefactor(s).norm(), spec.step, spec.tol))
}

/// `R(s)` from the parabolic-cylinder integral along `u = e^{-iπ/4} v`.
pub fn r_gabcke_u<T: Real>(s: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    r_gabcke_u_with(s, spec, &HermiteEngine::default())
}

/// [`r_gabcke_u`] with an explicit Hermite engine.
pub fn r_gabcke_u_with<T: Real>(
    s: Complex<T>,
    spec: &QuadratureSpec<T>,
    engine: &HermiteEngine<T>,
) -> Result<EvalResult<T>> {
    r_gabcke_u_on(s, &gabcke_contour(), spec, engine)
}

/// [`r_gabcke_u`] along any line of direction `e^{-iπ/4}` between `±½`.
pub fn r_gabcke_u_on<T: Real>(
    s: Complex<T>,
    contour: &LineContour<T>,
    spec: &QuadratureSpec<T>,
    engine: &HermiteEngine<T>,
) -> Result<EvalResult<T>> {
    let a = s - lit::<T>(0.5);
    let tol = inner_tol(spec.tol);
    let pi = T::PI();
    let arg_scale = omega::<T>() * (pi * lit(2.0)).sqrt();
    let i = Complex::new(T::zero(), T::one());
    let mut abs_err = T::zero();
    let res = try_integrate_line(
        |u| {
            let uu = parabolic_u_with(engine, a, arg_scale * u, tol)?;
            let phase = (i * pi * (u - u * u * lit::<T>(0.5))).exp();
            let v = uu.value * phase / (i * lit::<T>(2.0) * cospi(u));
            abs_err += v.norm() * uu.err_estimate;
            Ok(v)
        },
        contour,
        spec,
    )?;
    let pre = gabcke_prefactor(s);
    Ok(with_inner_error(res.scaled(pre), abs_err * pre.norm(), spec.step, spec.tol))
}
