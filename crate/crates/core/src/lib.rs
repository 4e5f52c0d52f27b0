//! Numerical toolkit for the Riemann auxiliary function
//!
//! ```text
//! R(s) = ∫_{0↙1} x^{-s} e^{πix²} / (e^{πix} - e^{-πix}) dx.
//! ```
//!
//! * [`special`]: complex gamma, `1/Γ`, `log Γ`, `sin πz`.
//! * [`hermite`]: Hermite functions `H_ν(z)` of complex order, Whittaker
//!   `D_ν` and parabolic cylinder `U(a, z)`.
//! * [`quad`]: trapezoid rule on straight lines in the complex plane.
//! * [`auxiliary`]: `R(s)` by three integral representations.
//! * [`identities`]: quadrature checks of the two contour identities behind
//!   the Hermite representation.
//! * [`crosscheck`]: agreement of the representations at one `s`.
//! * [`xray`]: zero-curve images of complex functions.
//! * [`zeta`]: `ζ(s)` from `R(s)`, a classical sanity check.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); accuracy targets
//! in the docs refer to `f64`. The aliases below fix `f64`.
//!
//! ```
//! use auxr_core::{Complex64, RMethod};
//!
//! let r = RMethod::Definition.eval(Complex64::new(0.0, 0.0), 1e-12).unwrap();
//! assert!((r.value - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
//! ```

// `!(x > 0)` is how the checks reject NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod auxiliary;
pub mod crosscheck;
pub mod error;
pub mod hermite;
pub mod identities;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod twofold;
pub mod xray;
pub mod zeta;

pub use num_complex::{Complex, Complex32, Complex64};

pub use auxiliary::{default_spec, r_definition, r_gabcke_u, r_hermite, RMethod};
pub use crosscheck::{crosscheck, CrossCheckReport};
pub use error::{Error, Result};
pub use hermite::{
    hermite, hermite_gauss, hermite_integral, hermite_reflection_residual, hermite_series, parabolic_ode_residual,
    parabolic_u, whittaker_d, HermiteEngine, HermiteEval, HermiteMethod,
};
pub use identities::{prop_inth_residual, prop_inth_spec, sinc_lemma_residual, sinc_lemma_spec};
pub use quad::{choose_spec, integrate_line, integrate_real_line, DecayClass, EvalResult, LineContour, QuadratureSpec};
pub use scalar::Real;
pub use special::{complex_gamma, complex_log_gamma, recip_gamma};
pub use xray::{detect_zero_curves, eval_grid, GridSpec, GridValues, PixelClass, XRayImage};
pub use zeta::{zeta_spec, zeta_via_r};

pub type EvalResult64 = EvalResult<f64>;
pub type EvalResult32 = EvalResult<f32>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type QuadratureSpec32 = QuadratureSpec<f32>;
pub type LineContour64 = LineContour<f64>;
pub type HermiteEngine64 = HermiteEngine<f64>;
pub type HermiteEval64 = HermiteEval<f64>;
pub type CrossCheckReport64 = CrossCheckReport<f64>;
pub type GridSpec64 = GridSpec<f64>;
pub type GridValues64 = GridValues<f64>;
pub type XRayImage64 = XRayImage<f64>;
