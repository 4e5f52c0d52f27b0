//! Riemann zeta from the auxiliary function.
//!
//! This is the classical identity
//!
//! ```text
//! ζ(s) = R(s) + χ(s) conj(R(1 - conj s)),   χ(s) = π^{s-½} Γ((1-s)/2) / Γ(s/2),
//! ```
//!
//! which is not one of the representations of `R` implemented here. It is
//! offered only as an outside sanity check: the result can be compared with
//! any independent evaluation of `ζ`.

use num_complex::Complex;

use crate::auxiliary::{default_spec, r_definition, RMethod};
use crate::error::Result;
use crate::quad::{EvalResult, QuadratureSpec};
use crate::scalar::{lit, Real};
use crate::special::{complex_gamma, real_pow, recip_gamma};

/// `χ(s) = π^{s-½} Γ((1-s)/2) / Γ(s/2)`. Fails at `s = 1, 3, 5, …`.
pub fn chi<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let half = lit::<T>(0.5);
    let one = Complex::new(T::one(), T::zero());
    Ok(real_pow(T::PI(), s - half) * complex_gamma((one - s) * half)? * recip_gamma(s * half))
}

/// Spec for [`zeta_via_r`]: the definition's default at `tol`.
pub fn zeta_spec<T: Real>(s: Complex<T>, tol: T) -> Result<QuadratureSpec<T>> {
    default_spec(RMethod::Definition, s, tol)
}

/// `ζ(s)` from two evaluations of `R` by the defining integral. The error
/// estimate is relative to the larger of the two terms.
pub fn zeta_via_r<T: Real>(s: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    let chi = chi(s)?;
    let one = Complex::new(T::one(), T::zero());
    let direct = r_definition(s, spec)?;
    let mirror = r_definition(one - s.conj(), spec)?;
    let reflected = chi * mirror.value.conj();
    let value = direct.value + reflected;
    let abs_err = direct.err_estimate * direct.value.norm() + mirror.err_estimate * reflected.norm();
    // measured against the terms, not the sum, which vanishes at the zeros
    let scale = value.norm().max(direct.value.norm()).max(reflected.norm());
    let err_estimate = if scale > T::zero() { abs_err / scale } else { T::zero() };
    Ok(EvalResult { value, err_estimate, nodes: direct.nodes + mirror.nodes, degraded: err_estimate > spec.tol })
}
