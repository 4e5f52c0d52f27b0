//! Quadrature validators for two contour-integral identities:
//!
//! ```text
//! ∫_L e^{-zζ} / (1 + e^{-ζ}) dζ = π / sin πz,          0 < Re z - Im z < 1,
//! ∫_{0↑} x^s e^{x²/4 - xz} dx = 2i√π e^{-z²} H_s(z),
//! ```
//!
//! where `L` is the line through 0 in direction `e^{iπ/4}` and `0↑` is any
//! upward line `x = a + e^{iθ}u`, `a > 0`, `π/4 < θ < 3π/4`. The default
//! crossing point is `a = 1`; another is used only when it makes the
//! integrand markedly smaller.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermite::{hermite_gauss, HermiteMethod};
use crate::quad::{
    choose_spec, integrate_line, try_integrate_param_twofold, DecayClass, EvalResult, LineContour, QuadratureSpec,
};
use crate::scalar::{lit, real, Real};
use crate::special::sinpi;
use crate::twofold::TwofoldComplex;

/// Relative mismatch `|a - b| / max(|a|, |b|, 1e-300)`.
pub fn residual<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let scale = a.norm().max(b.norm()).max(lit(1e-300));
    (a - b).norm() / scale
}

fn strip_offset<T: Real>(z: Complex<T>) -> Result<T> {
    let alpha = z.re - z.im;
    if alpha > T::zero() && alpha < T::one() {
        Ok(alpha)
    } else {
        Err(Error::Domain(format!("need 0 < Re z - Im z < 1, got z = {z}")))
    }
}

/// The line through 0 in direction `e^{iπ/4}`.
pub fn lemma_contour<T: Real>() -> LineContour<T> {
    LineContour::new(Complex::new(T::zero(), T::zero()), T::FRAC_PI_4())
}

/// `e^{-zζ} / (1 + e^{-ζ})` without overflow for either sign of `Re ζ`.
pub fn lemma_integrand<T: Real>(z: Complex<T>, zeta: Complex<T>) -> Complex<T> {
    let one = real::<T>(T::one());
    if zeta.re >= T::zero() {
        (-z * zeta).exp() / (one + (-zeta).exp())
    } else {
        ((one - z) * zeta).exp() / (zeta.exp() + one)
    }
}

/// Spec for the lemma integral: on `L` the integrand decays like
/// `e^{-α|u|/√2}` forward and `e^{-(1-α)|u|/√2}` backward, `α = Re z - Im z`.
///
/// The integrand is of order one near 0 while `π / sin πz` shrinks like
/// `e^{-π|Im z|}`, so the truncation tolerance is scaled by the latter.
pub fn sinc_lemma_spec<T: Real>(z: Complex<T>, tol: T) -> Result<QuadratureSpec<T>> {
    let alpha = strip_offset(z)?;
    let rate = alpha.min(T::one() - alpha) * T::FRAC_1_SQRT_2();
    let size = (T::PI() / sinpi(z).norm()).min(T::one());
    // the nearest poles ±iπ sit 2.2 away from L, so a coarse step suffices
    let spec = choose_spec(DecayClass::Exponential(rate), tol * size)?;
    Ok(QuadratureSpec { tol, ..spec }.with_step(lit(0.125)))
}

/// `∫_L e^{-zζ} / (1 + e^{-ζ}) dζ`.
pub fn sinc_lemma_lhs<T: Real>(z: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    strip_offset(z)?;
    integrate_line(|zeta| lemma_integrand(z, zeta), &lemma_contour(), spec)
}

/// Relative mismatch between the lemma integral and `π / sin πz`.
pub fn sinc_lemma_residual<T: Real>(z: Complex<T>, spec: &QuadratureSpec<T>) -> Result<T> {
    let lhs = sinc_lemma_lhs(z, spec)?;
    let rhs = real::<T>(T::PI()) / sinpi(z);
    Ok(residual(lhs.value, rhs))
}

fn check_angle<T: Real>(angle: T) -> Result<()> {
    if angle > T::FRAC_PI_4() && angle < lit::<T>(0.75) * T::PI() {
        Ok(())
    } else {
        Err(Error::Domain(format!("angle must lie in (π/4, 3π/4), got {angle}")))
    }
}

/// Candidate crossing points of the upward line, the first one preferred.
const PROP_ANCHORS: [f64; 10] = [1.0, 0.25, 0.375, 0.5, 0.75, 1.5, 2.0, 3.0, 4.0, 6.0];

/// The upward line through 1 at `angle`.
pub fn prop_contour<T: Real>(angle: T) -> Result<LineContour<T>> {
    check_angle(angle)?;
    Ok(LineContour::new(real(T::one()), angle))
}

/// The upward line at `angle` whose integrand has the smallest peak.
///
/// The integral does not depend on where the line crosses the positive
/// axis, but the integrand size does: through 1 it can exceed the result by
/// `10⁸`, which no double-precision sum recovers. Lines passing near a
/// saddle of `x^s e^{x²/4 - xz}` keep the ratio small.
pub fn prop_best_contour<T: Real>(s: Complex<T>, z: Complex<T>, angle: T) -> Result<LineContour<T>> {
    check_angle(angle)?;
    let dir = Complex::from_polar(T::one(), angle);
    let quarter = lit::<T>(0.25);
    let peak = |a: T| {
        let mut best = T::neg_infinity();
        for k in -800..=800 {
            let x = dir * lit::<T>(k as f64 * 0.05) + a;
            let l = (s * x.ln() + x * x * quarter - x * z).re;
            best = best.max(l);
        }
        best
    };
    let mut chosen = (T::one(), peak(T::one()));
    for &a in PROP_ANCHORS.iter().skip(1) {
        let a = lit::<T>(a);
        let p = peak(a);
        // stay on the default line unless the gain is clear
        if p < chosen.1 - T::one() && p < peak(T::one()) - lit(2.0) {
            chosen = (a, p);
        }
    }
    Ok(LineContour::new(real(chosen.0), angle))
}

/// Spec for the proposition integral along [`prop_best_contour`].
///
/// `|e^{x²/4}|` decays like `e^{-c u²}`, `c = -cos 2θ / 4`, while
/// `|x^s e^{-xz}|` can grow like `e^{π|Im s| + (|z| + a/2)|u|}` on the line
/// through `a`; the half width solves `c T² - (|z| + a/2) T = ln(1/tol) + π|Im s|`
/// and adds the usual margin.
pub fn prop_inth_spec<T: Real>(s: Complex<T>, z: Complex<T>, angle: T, tol: T) -> Result<QuadratureSpec<T>> {
    let contour = prop_best_contour(s, z, angle)?;
    let c = -(angle * lit(2.0)).cos() * lit(0.25);
    let base = choose_spec(DecayClass::Gaussian(c), tol)?;
    let l = (T::one() / tol).ln().max(T::zero()) + T::PI() * s.im.abs();
    let b = z.norm() + contour.anchor().re * lit(0.5);
    let half_width = (b + (b * b + lit::<T>(4.0) * c * l).sqrt()) / (c * lit(2.0)) + lit(2.0);
    Ok(base.with_half_width(half_width.ceil()))
}

/// `∫ x^s e^{x²/4 - xz} dx` upward along [`prop_best_contour`].
pub fn prop_inth_lhs<T: Real>(
    s: Complex<T>,
    z: Complex<T>,
    angle: T,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    prop_inth_lhs_on(s, z, &prop_best_contour(s, z, angle)?, spec)
}

/// `∫ x^s e^{x²/4 - xz} dx` along an explicit upward line.
///
/// Even on the best line the integrand can exceed the integral by `10⁷`
/// (for `θ` near `3π/4` with `Re z < 0`), so samples and sums are kept in
/// double-double.
pub fn prop_inth_lhs_on<T: Real>(
    s: Complex<T>,
    z: Complex<T>,
    contour: &LineContour<T>,
    spec: &QuadratureSpec<T>,
) -> Result<EvalResult<T>> {
    check_angle(contour.angle())?;
    if !(contour.anchor().re > T::zero()) || contour.anchor().im != T::zero() {
        return Err(Error::Domain(format!("line must cross the positive real axis, anchor {}", contour.anchor())));
    }
    let anchor = TwofoldComplex::from_complex(contour.anchor());
    let dir = TwofoldComplex::from_complex(contour.direction());
    let s_dd = TwofoldComplex::from_complex(s);
    let z_dd = TwofoldComplex::from_complex(z);
    let quarter = TwofoldComplex::from_real(lit::<T>(0.25));
    try_integrate_param_twofold(
        |u| {
            let x = anchor + dir * TwofoldComplex::from_real(u);
            Ok((s_dd * x.ln() + x * x * quarter - x * z_dd).exp())
        },
        contour,
        spec,
    )
}

/// `2i√π e^{-z²} H_s(z)`.
pub fn prop_inth_rhs<T: Real>(s: Complex<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    let h = hermite_gauss(s, z, HermiteMethod::Auto, tol)?;
    Ok(h.value() * Complex::new(T::zero(), T::PI().sqrt() * lit(2.0)))
}

/// Relative mismatch between the proposition integral and its closed form.
pub fn prop_inth_residual<T: Real>(s: Complex<T>, z: Complex<T>, angle: T, spec: &QuadratureSpec<T>) -> Result<T> {
    let lhs = prop_inth_lhs(s, z, angle, spec)?;
    let rhs = prop_inth_rhs(s, z, (spec.tol * lit(1e-2)).max(lit(1e-14)))?;
    Ok(residual(lhs.value, rhs))
}
