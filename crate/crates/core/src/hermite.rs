//! Hermite functions `H_ν(z)` of complex order and argument.
//!
//! Three evaluation routes are available:
//!
//! * **Series**: the defining power series
//!   `H_ν(z) = 1/(2Γ(-ν)) Σ Γ((n-ν)/2) (-2z)^n / n!`, regrouped by parity of
//!   `n`. The duplication formula turns the two prefactors into
//!   `√π 2^ν / Γ((1-ν)/2)` and `√π 2^ν / Γ(-ν/2)`, both entire in `ν`, so
//!   nonnegative integer orders reduce to the Hermite polynomials without
//!   special casing. The even and odd sums can cancel by many orders of
//!   magnitude, so they are accumulated in double-double arithmetic
//!   ([`crate::twofold`]).
//! * **IntegralRep**: `H_ν(z) = 1/Γ(-ν) ∫_0^∞ e^{-t²-2tz} t^{-ν-1} dt` for
//!   `Re ν < 0`, computed with `t = e^{u+iφ(u)}` and the trapezoid rule in
//!   `u`. The path angle `φ(u)` is picked to minimise the peak of the
//!   integrand. Nodes left of a cut `u₀` are summed in closed form from the
//!   Taylor expansion of `e^{-t²-2tz}` (a geometric series per power of `t`).
//! * **RecurrenceLift**: `H_{μ+1} = 2z H_μ - 2μ H_{μ-1}` applied upward from
//!   two integral-representation bases with negative real order.
//!
//! Every route can return the Gaussian-weighted value `e^{-λz²} H_ν(z)`.
//! Integrands such as `e^{-πx²} H_{-s}(x√π)` and the x-ray plots use
//! `λ = 1`, which keeps values in range where `H_ν` alone would overflow.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quad::{relative_gap, EvalResult, QuadratureSpec};
use crate::scalar::{from_i64, is_finite, lit, real, CompensatedSum, Real};
use crate::special::{complex_gamma, real_pow, recip_gamma};
use crate::twofold::{half_step_gamma_ratio, TwofoldComplex};

/// Which representation evaluates `H_ν(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HermiteMethod {
    Series,
    /// Requires `Re ν < 0`.
    IntegralRep,
    /// Requires `Re ν >= 0`.
    RecurrenceLift,
    Auto,
}

/// A Hermite value together with the route that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteEval<T: Real> {
    pub result: EvalResult<T>,
    /// Never `Auto`.
    pub method: HermiteMethod,
    /// Series only: largest partial-sum magnitude over `|result|`.
    pub cancellation: Option<T>,
}

impl<T: Real> HermiteEval<T> {
    pub fn value(&self) -> Complex<T> {
        self.result.value
    }
}

/// Tunables of the Hermite evaluator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteEngine<T: Real> {
    /// `Auto` tries the series first when `|z| <= z_switch`.
    pub z_switch: T,
    /// Series term budget.
    pub max_terms: usize,
    /// Quadrature node budget of one integral-representation call.
    pub max_nodes: usize,
}

impl<T: Real> Default for HermiteEngine<T> {
    fn default() -> Self {
        Self { z_switch: lit(3.0), max_terms: 2000, max_nodes: 200_000 }
    }
}

/// Consecutive negligible terms required before the series stops.
const SERIES_QUIET_RUN: usize = 30;

fn is_nonnegative_integer<T: Real>(nu: Complex<T>) -> bool {
    nu.im == T::zero() && nu.re >= T::zero() && nu.re.fract() == T::zero()
}

impl<T: Real> HermiteEngine<T> {
    /// `H_ν(z)`.
    pub fn eval(&self, nu: Complex<T>, z: Complex<T>, method: HermiteMethod, tol: T) -> Result<HermiteEval<T>> {
        self.eval_weighted(nu, z, method, tol, T::zero())
    }

    /// `e^{-λ z²} H_ν(z)`.
    pub fn eval_weighted(
        &self,
        nu: Complex<T>,
        z: Complex<T>,
        method: HermiteMethod,
        tol: T,
        lambda: T,
    ) -> Result<HermiteEval<T>> {
        if !(tol > T::zero()) {
            return Err(Error::Precondition(format!("tol must be positive, got {tol}")));
        }
        match method {
            HermiteMethod::Series => self.series(nu, z, tol, lambda),
            HermiteMethod::IntegralRep => {
                if nu.re >= T::zero() {
                    return Err(Error::Domain(format!("integral representation needs Re ν < 0, got ν = {nu}")));
                }
                self.integral(nu, z, tol, lambda)
            }
            HermiteMethod::RecurrenceLift => {
                if nu.re < T::zero() {
                    return Err(Error::Domain(format!("recurrence lift needs Re ν >= 0, got ν = {nu}")));
                }
                self.lift(nu, z, tol, lambda)
            }
            HermiteMethod::Auto => self.auto(nu, z, tol, lambda),
        }
    }

    fn auto(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<HermiteEval<T>> {
        if is_nonnegative_integer(nu) {
            return self.series(nu, z, tol, lambda);
        }
        let near = z.norm() <= self.z_switch;
        let mut fallback = None;
        if near {
            match self.series(nu, z, tol, lambda) {
                Ok(ev) if !ev.result.degraded => return Ok(ev),
                Ok(ev) => fallback = Some(ev),
                Err(Error::Convergence { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let primary = if nu.re < T::zero() { self.integral(nu, z, tol, lambda) } else { self.lift(nu, z, tol, lambda) };
        let primary = match primary {
            Ok(ev) if !ev.result.degraded => return Ok(ev),
            Ok(ev) => Some(ev),
            Err(e) if fallback.is_none() && near => return Err(e),
            Err(_) => None,
        };
        if !near {
            // large |z| can still be fine for the series when little cancels
            fallback = self.series(nu, z, tol, lambda).ok();
        }
        match (primary, fallback) {
            (Some(p), Some(f)) => Ok(if f.result.err_estimate < p.result.err_estimate { f } else { p }),
            (Some(p), None) => Ok(p),
            (None, Some(f)) => Ok(f),
            (None, None) => {
                if nu.re < T::zero() {
                    self.integral(nu, z, tol, lambda)
                } else {
                    self.lift(nu, z, tol, lambda)
                }
            }
        }
    }

    fn series(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<HermiteEval<T>> {
        if is_nonnegative_integer(nu) {
            return self.polynomial(nu, z, tol, lambda);
        }
        let half = lit::<T>(0.5);
        let a = -nu * half;
        let prefactor = real_pow(lit::<T>(2.0), nu) * T::PI().sqrt() * recip_gamma(a + half);
        // odd part relative to the even one: -Γ(a+1/2)/Γ(a)
        let coupling = -half_step_gamma_ratio(a);

        let two_z = TwofoldComplex::from_complex(z * lit::<T>(2.0));
        let two_z_sq = two_z * two_z;
        let a_dd = TwofoldComplex::from_complex(a);
        let half_dd = TwofoldComplex::from_real(half);
        let mut even = TwofoldComplex::from_real(T::one());
        let mut odd = two_z;
        let mut sum = TwofoldComplex::zero();
        let mut peak = T::zero();
        let mut quiet = 0usize;
        let threshold = tol.min(T::epsilon() * T::epsilon());

        for n in 0..self.max_terms {
            let k = (n / 2) as i64;
            let term = if n % 2 == 0 {
                let t = even;
                let den = TwofoldComplex::from_i64((2 * k + 1) * (2 * k + 2));
                even = even * two_z_sq * (a_dd + TwofoldComplex::from_i64(k)) / den;
                t
            } else {
                let t = coupling * odd;
                let den = TwofoldComplex::from_i64((2 * k + 2) * (2 * k + 3));
                odd = odd * two_z_sq * (a_dd + half_dd + TwofoldComplex::from_i64(k)) / den;
                t
            };
            sum = sum + term;
            peak = peak.max(sum.norm()).max(term.norm());
            if term.norm() <= threshold * peak {
                quiet += 1;
                if quiet >= SERIES_QUIET_RUN {
                    let total = sum.to_complex();
                    let cancellation = if total.norm() > T::zero() { peak / total.norm() } else { T::infinity() };
                    let eps = T::epsilon();
                    let err =
                        lit::<T>(8.0) * eps + lit::<T>(16.0) * eps * eps * cancellation * from_i64::<T>(n as i64 + 1);
                    let weight = (-(z * z) * lambda).exp();
                    return Ok(HermiteEval {
                        result: EvalResult {
                            value: prefactor * total * weight,
                            err_estimate: err,
                            nodes: n + 1,
                            degraded: err > tol,
                        },
                        method: HermiteMethod::Series,
                        cancellation: Some(cancellation),
                    });
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Convergence { what: "Hermite series", budget: self.max_terms })
    }

    /// Nonnegative integer order: the series terminates in one parity and
    /// the other is annihilated by `1/Γ`, leaving the Hermite polynomial.
    fn polynomial(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<HermiteEval<T>> {
        let half = lit::<T>(0.5);
        let one = real::<T>(T::one());
        let base = real_pow(lit::<T>(2.0), nu) * T::PI().sqrt();
        let even_pref = base * recip_gamma((one - nu) * half);
        let odd_pref = -(base * recip_gamma(-nu * half));
        let two_z = z * lit::<T>(2.0);
        let two_z_sq = two_z * two_z;
        let mut even = one;
        let mut odd = two_z;
        let mut sum = CompensatedSum::new();
        let mut peak = T::zero();
        let degree = nu.re.to_usize().unwrap_or(0);
        for n in 0..=degree {
            let k = from_i64::<T>((n / 2) as i64);
            let k2 = k + k;
            let term = if n % 2 == 0 {
                let t = even_pref * even;
                even = even * two_z_sq * (-nu * half + k) / ((k2 + T::one()) * (k2 + lit(2.0)));
                t
            } else {
                let t = odd_pref * odd;
                odd = odd * two_z_sq * ((one - nu) * half + k) / ((k2 + lit(2.0)) * (k2 + lit(3.0)));
                t
            };
            sum.add(term);
            peak = peak.max(sum.value().norm()).max(term.norm());
        }
        let total = sum.value();
        let cancellation = if total.norm() > T::zero() { peak / total.norm() } else { T::one() };
        let err = lit::<T>(4.0) * T::epsilon() * cancellation;
        let weight = (-(z * z) * lambda).exp();
        Ok(HermiteEval {
            result: EvalResult { value: total * weight, err_estimate: err, nodes: degree + 1, degraded: err > tol },
            method: HermiteMethod::Series,
            cancellation: Some(cancellation),
        })
    }

    fn integral(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<HermiteEval<T>> {
        let spec = hermite_integral_spec(nu, z, tol).with_max_nodes(self.max_nodes);
        let direct = integral_kernel(nu, z, &spec, lambda);
        let poor = match &direct {
            Ok(r) => r.degraded,
            Err(_) => true,
        };
        if z.re < T::zero() && poor {
            if let Ok(conn) = self.connected(nu, z, tol, lambda) {
                match &direct {
                    Ok(d) if d.err_estimate <= conn.err_estimate => {}
                    _ => {
                        return Ok(HermiteEval { result: conn, method: HermiteMethod::IntegralRep, cancellation: None })
                    }
                }
            }
        }
        Ok(HermiteEval { result: direct?, method: HermiteMethod::IntegralRep, cancellation: None })
    }

    /// `e^{-λz²} H_ν(z)` for `Re z < 0` from values at `-z` and `±iz`:
    ///
    /// `H_ν(z) = e^{∓iπν} H_ν(-z) + 2^{ν+1}√π/Γ(-ν) e^{∓iπ(ν+1)/2} e^{z²} H_{-ν-1}(±iz)`,
    ///
    /// upper signs for `Im z <= 0`, so that `Re(±iz) >= 0`. On the left the
    /// integrand must pass two saddles and no single bend keeps it small; the
    /// two terms are the contributions of the two saddles.
    fn connected(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<EvalResult<T>> {
        let i = Complex::new(T::zero(), T::one());
        let sign = if z.im <= T::zero() { T::one() } else { -T::one() };
        let half_pi = T::PI() * lit(0.5);
        let mirror = self.integral(nu, -z, tol, lambda)?.result;
        let rotated = i * z * sign;
        let other = self.auto(-nu - T::one(), rotated, tol, T::one() - lambda)?.result;
        let a = (-i * nu * T::PI() * sign).exp() * mirror.value;
        let k = real_pow(lit::<T>(2.0), nu + T::one())
            * T::PI().sqrt()
            * recip_gamma(-nu)
            * (-i * (nu + T::one()) * half_pi * sign).exp();
        let b = k * other.value;
        let value = a + b;
        let abs_err = a.norm() * mirror.err_estimate + b.norm() * other.err_estimate;
        let err = if value.norm() > T::zero() { abs_err / value.norm() } else { T::infinity() };
        Ok(EvalResult { value, err_estimate: err, nodes: mirror.nodes + other.nodes, degraded: err > tol })
    }

    fn lift(&self, nu: Complex<T>, z: Complex<T>, tol: T, lambda: T) -> Result<HermiteEval<T>> {
        let k = nu.re.ceil().to_i64().unwrap_or(0) + 1;
        let mut mu = nu - from_i64::<T>(k);
        let lower = self.integral(mu - T::one(), z, tol, lambda)?.result;
        let upper = self.integral(mu, z, tol, lambda)?.result;
        let (mut h_prev, mut h_cur) = (lower.value, upper.value);
        let mut e_prev = lower.err_estimate * h_prev.norm();
        let mut e_cur = upper.err_estimate * h_cur.norm();
        let two = lit::<T>(2.0);
        for _ in 0..k {
            let next = z * two * h_cur - mu * two * h_prev;
            let e_next = two * z.norm() * e_cur + two * mu.norm() * e_prev;
            h_prev = h_cur;
            h_cur = next;
            e_prev = e_cur;
            e_cur = e_next;
            mu += T::one();
        }
        let err = if h_cur.norm() > T::zero() { e_cur / h_cur.norm() } else { e_cur };
        Ok(HermiteEval {
            result: EvalResult {
                value: h_cur,
                err_estimate: err,
                nodes: lower.nodes + upper.nodes,
                degraded: err > tol,
            },
            method: HermiteMethod::RecurrenceLift,
            cancellation: None,
        })
    }
}

/// Default quadrature parameters for the integral representation.
///
/// The quadrature runs in `u = ln|t|` along a ray `t = e^{u + iφ}`. The
/// sampled window starts at `u₀ = ln t₀`, `t₀ = min(1, 1/(4(1+|z|)))`, and
/// `half_width` is half its length; `step` is the starting step, halved
/// until the two-grid estimate meets `tol`.
pub fn hermite_integral_spec<T: Real>(nu: Complex<T>, z: Complex<T>, tol: T) -> QuadratureSpec<T> {
    let plan = IntegralPlan::new(nu, z);
    let step = lit::<T>(0.5) / (T::one() + lit::<T>(0.1) * nu.im.abs() + z.norm());
    let half_width = (plan.u_hi - plan.u_lo) * lit(0.5);
    QuadratureSpec { half_width, step, tol, max_nodes: 200_000 }
}

/// Path and window for the integral representation.
///
/// `∫_0^∞` may follow any path from 0 that ends in a direction `|arg t| < π/4`
/// and avoids the negative axis. The path changes the integrand magnitude
/// but not the integral, so the one with the smallest peak magnitude loses
/// the fewest digits to cancellation. In `s = ln t` it is
/// `s(u) = u + iφ(u)` with `φ(u) = φ₁ + (φ₀ - φ₁) σ((u_c - u)/w)`: a ray of
/// angle `φ₀` near 0 bending to `φ₁` near `|t| = e^{u_c}`. The bend matters
/// for large `|Im ν|`, where `|t^{-ν}|` alone asks for a steep `φ₀`.
#[derive(Clone, Copy, Debug)]
struct IntegralPlan<T: Real> {
    phi0: T,
    phi1: T,
    u_c: T,
    u_lo: T,
    u_hi: T,
}

/// Angles `φ₁` allowed at infinity.
const OUTER_ANGLES: [f64; 7] = [0.0, 0.2, -0.2, 0.4, -0.4, 0.6, -0.6];
/// `φ₀` ranges over multiples of `ANGLE_STEP` up to `INNER_LIMIT`.
const ANGLE_STEP: f64 = 0.2;
const INNER_LIMIT: i64 = 14;
/// Sampling of the magnitude profiles in `u`.
const PROFILE_STEP: f64 = 0.15;
const U_CAP: f64 = 6.0;
/// Bend width `w`; the window starts at least `BEND_CLEARANCE` widths left
/// of the bend so the path is straight to machine precision there.
const BEND_WIDTH: f64 = 0.25;
const BEND_CLEARANCE: f64 = 20.0;
/// Log-magnitude drop below the peak at which the window ends.
const WINDOW_DROP: f64 = 46.0;

fn logistic_real<T: Real>(x: T) -> T {
    if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}

impl<T: Real> IntegralPlan<T> {
    fn new(nu: Complex<T>, z: Complex<T>) -> Self {
        let t0 = (lit::<T>(0.25) / (T::one() + z.norm())).min(T::one());
        let u_min = t0.ln();
        let du = lit::<T>(PROFILE_STEP);
        let n_u = ((lit::<T>(U_CAP) - u_min) / du).ceil().to_usize().unwrap_or(1).max(2) + 1;
        let angles: Vec<T> = (-INNER_LIMIT..=INNER_LIMIT).map(|k| lit::<T>(k as f64 * ANGLE_STEP)).collect();
        let centre = INNER_LIMIT as usize;
        let outer: Vec<usize> =
            OUTER_ANGLES.iter().map(|&a| (centre as i64 + (a / ANGLE_STEP).round() as i64) as usize).collect();
        let radii: Vec<(T, T)> = (0..n_u)
            .map(|k| {
                let u = u_min + from_i64::<T>(k as i64) * du;
                (u, u.exp())
            })
            .collect();
        // log |integrand| on each ray, without the constant (1-λ) Re z² term;
        // row-major by angle, with running maxima from the left
        let mut profile = Vec::with_capacity(angles.len() * n_u);
        let mut prefix = Vec::with_capacity(angles.len() * n_u);
        for &phi in &angles {
            let (sin_p, cos_p) = phi.sin_cos();
            let offset = nu.im * phi;
            let mut m = T::neg_infinity();
            for &(u, r) in &radii {
                let (a, b) = (r * cos_p + z.re, r * sin_p + z.im);
                let l = b * b - a * a - nu.re * u + offset;
                m = m.max(l);
                profile.push(l);
                prefix.push(m);
            }
        }
        let at = |a: usize, k: usize| a * n_u + k;
        // suffix maxima of the outer rays; a ray still large at the cap is unusable
        let suffix: Vec<Option<Vec<T>>> = outer
            .iter()
            .map(|&f| {
                let mut out = vec![T::zero(); n_u];
                let mut m = T::neg_infinity();
                for k in (0..n_u).rev() {
                    m = m.max(profile[at(f, k)]);
                    out[k] = m;
                }
                (profile[at(f, n_u - 1)] < out[0] - lit(WINDOW_DROP)).then_some(out)
            })
            .collect();

        let default = suffix[0].as_ref().map_or(T::infinity(), |s| s[0]);
        let mut best = (default, centre, 0usize, 0usize);
        for (fi, &f) in outer.iter().enumerate() {
            let Some(suf) = &suffix[fi] else { continue };
            if suf[0] < best.0 {
                best = (suf[0], f, fi, 0);
            }
            for kc in (0..n_u).step_by(2) {
                let tail = suf[kc];
                if tail >= best.0 {
                    continue;
                }
                // walk φ₀ away from φ₁, tracking the largest magnitude on
                // the intermediate rays at the bend
                for dir in [-1i64, 1] {
                    let mut between = profile[at(f, kc)];
                    let mut a = f as i64 + dir;
                    while a >= 0 && (a as usize) < angles.len() {
                        let ai = a as usize;
                        between = between.max(profile[at(ai, kc)]);
                        if between >= best.0 {
                            break;
                        }
                        let cost = prefix[at(ai, kc)].max(tail).max(between);
                        if cost < best.0 {
                            best = (cost, ai, fi, kc);
                        }
                        a += dir;
                    }
                }
            }
        }

        let (cost, a0, fi, kc) = best;
        // require a clear gain before leaving the real axis
        let (phi0, phi1, u_c) = if cost < default - T::one() {
            (angles[a0], lit::<T>(OUTER_ANGLES[fi]), radii[kc].0)
        } else {
            (T::zero(), T::zero(), u_min)
        };
        let mut plan = Self { phi0, phi1, u_c, u_lo: u_min, u_hi: u_min };
        if phi0 != phi1 {
            plan.u_lo = u_min.min(u_c - lit::<T>(BEND_WIDTH * BEND_CLEARANCE));
        }
        plan.u_hi = plan.window_end(nu, z);
        plan
    }

    fn phi(&self, u: T) -> T {
        if self.phi0 == self.phi1 {
            return self.phi1;
        }
        self.phi1 + (self.phi0 - self.phi1) * logistic_real((self.u_c - u) / lit(BEND_WIDTH))
    }

    /// `ds/du = 1 + iφ'(u)`.
    fn jacobian(&self, u: T) -> Complex<T> {
        if self.phi0 == self.phi1 {
            return real(T::one());
        }
        let w = lit::<T>(BEND_WIDTH);
        let sig = logistic_real((self.u_c - u) / w);
        Complex::new(T::one(), -(self.phi0 - self.phi1) * sig * (T::one() - sig) / w)
    }

    fn point(&self, u: T) -> Complex<T> {
        Complex::new(u, self.phi(u))
    }

    /// First `u` past the peak, in the Gaussian regime, where the integrand
    /// has dropped by `e^{-WINDOW_DROP}`.
    fn window_end(&self, nu: Complex<T>, z: Complex<T>) -> T {
        let step = lit::<T>(PROFILE_STEP);
        let log_mag = |u: T| {
            let phi = self.phi(u);
            let (sin_p, cos_p) = phi.sin_cos();
            let r = u.exp();
            let (a, b) = (r * cos_p + z.re, r * sin_p + z.im);
            b * b - a * a - nu.re * u + nu.im * phi
        };
        let mut u = self.u_lo;
        let mut peak = log_mag(u);
        let mut peak_u = u;
        loop {
            u += step;
            let l = log_mag(u);
            if l > peak {
                peak = l;
                peak_u = u;
            }
            let r = u.exp();
            let gaussian = r * r * (lit::<T>(2.0) * self.phi(u)).cos() > lit::<T>(4.0) * z.norm() * r;
            if (u > peak_u && gaussian && l < peak - lit(WINDOW_DROP)) || u > lit(U_CAP) {
                return u;
            }
        }
    }
}

/// Taylor coefficients of `e^{-t² - 2tz}` until they fall below `rel` of
/// the running sum at `t = t0`.
fn taylor_coefficients<T: Real>(z: Complex<T>, t0: T) -> Vec<Complex<T>> {
    let two = lit::<T>(2.0);
    let mut coeffs = vec![real(T::one()), -z * two];
    let mut scale = t0;
    let mut acc = T::one();
    for k in 1..400usize {
        let next = (-z * two * coeffs[k] - coeffs[k - 1] * two) / from_i64::<T>(k as i64 + 1);
        coeffs.push(next);
        scale *= t0;
        let mag = next.norm() * scale;
        acc = acc.max(mag);
        if k > 4
            && mag < T::epsilon() * T::epsilon() * acc
            && coeffs[k].norm() * scale / t0 < T::epsilon() * T::epsilon() * acc
        {
            break;
        }
    }
    coeffs
}

/// Trapezoid sum (times `h`) of the nodes `s₀ - jh`, `j >= 1`, computed from
/// the Taylor expansion: `Σ_k b_k e^{(k-ν)s₀} q_k/(1-q_k)`, `q_k = e^{-(k-ν)h}`.
fn left_tail<T: Real>(nu: Complex<T>, coeffs: &[Complex<T>], w0: Complex<T>, h: T) -> Complex<T> {
    let mut acc = CompensatedSum::new();
    for (k, &b) in coeffs.iter().enumerate() {
        let a = real::<T>(from_i64(k as i64)) - nu;
        let q = (-a * h).exp();
        acc.add(b * (a * w0).exp() * q / (real::<T>(T::one()) - q));
    }
    acc.value() * h
}

/// `e^{-λz²} H_ν(z)` from the integral representation, adaptive in the step.
fn integral_kernel<T: Real>(
    nu: Complex<T>,
    z: Complex<T>,
    spec: &QuadratureSpec<T>,
    lambda: T,
) -> Result<EvalResult<T>> {
    let plan = IntegralPlan::new(nu, z);
    let u_lo = plan.u_lo;
    let u_hi = plan.u_hi.max(u_lo + spec.half_width * lit(2.0));
    let s_lo = plan.point(u_lo);
    let coeffs = taylor_coefficients(z, u_lo.exp());
    let z_sq_rest = z * z * (T::one() - lambda);
    let g = |u: T| -> Complex<T> {
        let s = plan.point(u);
        let tz = s.exp() + z;
        // -t² - 2tz - λz² - ν s = -(t+z)² + (1-λ) z² - ν s
        (-(tz * tz) + z_sq_rest - nu * s).exp() * plan.jacobian(u)
    };
    let non_finite = |j: usize, u: T| Error::NonFinite { index: j as i64, node: u.to_f64().unwrap_or(f64::NAN) };

    let mut h = spec.step;
    let mut points = ((u_hi - u_lo) / h).ceil().to_usize().unwrap_or(usize::MAX).max(2);
    if points + 1 > spec.max_nodes {
        return Err(Error::BudgetExceeded { needed: points + 1, budget: spec.max_nodes });
    }
    let mut body = CompensatedSum::new();
    let mut coarse_body = CompensatedSum::new();
    for j in 0..=points {
        let u = u_lo + from_i64::<T>(j as i64) * h;
        let v = g(u);
        if !is_finite(v) {
            return Err(non_finite(j, u));
        }
        body.add(v);
        if j % 2 == 0 {
            coarse_body.add(v);
        }
    }
    let mut nodes = points + 1;
    let weight = (-(z * z) * lambda).exp();
    let estimate = |body: Complex<T>, h: T| body * h + left_tail(nu, &coeffs, s_lo, h) * weight;
    let mut fine = estimate(body.value(), h);
    let coarse = estimate(coarse_body.value(), h + h);
    let mut err = relative_gap(fine, coarse);

    while err > spec.tol && nodes + points <= spec.max_nodes {
        for j in 0..points {
            let u = u_lo + (from_i64::<T>(j as i64) + lit(0.5)) * h;
            let v = g(u);
            if !is_finite(v) {
                return Err(non_finite(j, u));
            }
            body.add(v);
        }
        nodes += points;
        points *= 2;
        h *= lit(0.5);
        let finer = estimate(body.value(), h);
        let new_err = relative_gap(finer, fine);
        fine = finer;
        // below 1e-4 a poor ratio means the roundoff floor is reached
        let stalled = new_err > err * lit(0.5) && new_err < lit(1e-4);
        err = new_err;
        if stalled {
            break;
        }
    }

    let value = fine * recip_gamma(-nu);
    Ok(EvalResult { value, err_estimate: err, nodes, degraded: err > spec.tol })
}

/// `H_ν(z)` by the power series.
pub fn hermite_series<T: Real>(nu: Complex<T>, z: Complex<T>, tol: T) -> Result<EvalResult<T>> {
    Ok(HermiteEngine::default().eval(nu, z, HermiteMethod::Series, tol)?.result)
}

/// `H_ν(z)` by the half-line integral representation, `Re ν < 0`.
pub fn hermite_integral<T: Real>(nu: Complex<T>, z: Complex<T>, spec: &QuadratureSpec<T>) -> Result<EvalResult<T>> {
    if nu.re >= T::zero() {
        return Err(Error::Domain(format!("integral representation needs Re ν < 0, got ν = {nu}")));
    }
    integral_kernel(nu, z, spec, T::zero())
}

/// `H_ν(z)` with the default engine.
pub fn hermite<T: Real>(nu: Complex<T>, z: Complex<T>, method: HermiteMethod, tol: T) -> Result<HermiteEval<T>> {
    HermiteEngine::default().eval(nu, z, method, tol)
}

/// `e^{-z²} H_ν(z)` with the default engine.
pub fn hermite_gauss<T: Real>(nu: Complex<T>, z: Complex<T>, method: HermiteMethod, tol: T) -> Result<HermiteEval<T>> {
    HermiteEngine::default().eval_weighted(nu, z, method, tol, T::one())
}

const VALIDATOR_TOL: f64 = 1e-13;

/// Relative mismatch of the reflection formula
/// `H_ν(z) = 2^ν Γ(ν+1)/√π · e^{z²} [e^{iπν/2} H_{-ν-1}(iz) + e^{-iπν/2} H_{-ν-1}(-iz)]`.
pub fn hermite_reflection_residual<T: Real>(nu: Complex<T>, z: Complex<T>) -> Result<T> {
    let gamma = complex_gamma(nu + T::one())?;
    let tol = lit::<T>(VALIDATOR_TOL);
    let i = Complex::new(T::zero(), T::one());
    let lhs = hermite(nu, z, HermiteMethod::Auto, tol)?.value();
    let mirror = -nu - T::one();
    let plus = hermite(mirror, i * z, HermiteMethod::Auto, tol)?.value();
    let minus = hermite(mirror, -i * z, HermiteMethod::Auto, tol)?.value();
    let half_pi_nu = i * nu * (T::PI() * lit(0.5));
    let bracket = half_pi_nu.exp() * plus + (-half_pi_nu).exp() * minus;
    let rhs = real_pow(lit::<T>(2.0), nu) * gamma / T::PI().sqrt() * (z * z).exp() * bracket;
    let scale = lhs.norm().max(rhs.norm()).max(lit(1e-300));
    Ok((lhs - rhs).norm() / scale)
}

/// Whittaker `D_ν(z) = 2^{-ν/2} e^{-z²/4} H_ν(z/√2)`.
pub fn whittaker_d<T: Real>(nu: Complex<T>, z: Complex<T>) -> Result<EvalResult<T>> {
    whittaker_d_with(&HermiteEngine::default(), nu, z, lit(VALIDATOR_TOL))
}

/// [`whittaker_d`] with an explicit engine and tolerance.
pub fn whittaker_d_with<T: Real>(
    engine: &HermiteEngine<T>,
    nu: Complex<T>,
    z: Complex<T>,
    tol: T,
) -> Result<EvalResult<T>> {
    let w = z * T::FRAC_1_SQRT_2();
    let ev = engine.eval_weighted(nu, w, HermiteMethod::Auto, tol, lit(0.5))?;
    Ok(ev.result.scaled(real_pow(lit::<T>(2.0), -nu * lit::<T>(0.5))))
}

/// Parabolic cylinder function `U(a, z) = D_{-a-1/2}(z)`.
pub fn parabolic_u<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<EvalResult<T>> {
    whittaker_d(-a - lit::<T>(0.5), z)
}

/// [`parabolic_u`] with an explicit engine and tolerance.
pub fn parabolic_u_with<T: Real>(
    engine: &HermiteEngine<T>,
    a: Complex<T>,
    z: Complex<T>,
    tol: T,
) -> Result<EvalResult<T>> {
    whittaker_d_with(engine, -a - lit::<T>(0.5), z, tol)
}

/// Finite-difference residual of `w'' = (z²/4 + a) w` for `w = U(a, ·)` at
/// `z`, central differences with step `1e-3`, relative to the largest of
/// the three samples.
pub fn parabolic_ode_residual<T: Real>(a: Complex<T>, z: Complex<T>) -> Result<T> {
    let h = lit::<T>(1e-3);
    let below = parabolic_u(a, z - h)?.value;
    let centre = parabolic_u(a, z)?.value;
    let above = parabolic_u(a, z + h)?.value;
    let second = (above - centre * lit::<T>(2.0) + below) / (h * h);
    let residual = second - (z * z * lit::<T>(0.25) + a) * centre;
    let scale = below.norm().max(centre.norm()).max(above.norm()).max(lit(1e-300));
    Ok(residual.norm() / scale)
}
