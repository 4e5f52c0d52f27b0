//! Double-word ("double-double") real and complex arithmetic.
//!
//! Used where a result is a small difference of large terms and working
//! precision beyond `T` is needed: the Hermite series and the gamma ratio
//! that couples its even and odd parts.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::{from_i64, lit, Real};

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Twofold<T: Real> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> Twofold<T> {
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn from_real(x: T) -> Self {
        Self { hi: x, lo: T::zero() }
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn to_real(self) -> T {
        self.hi + self.lo
    }
}

impl<T: Real> Add for Twofold<T> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl<T: Real> Neg for Twofold<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl<T: Real> Sub for Twofold<T> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl<T: Real> Mul for Twofold<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl<T: Real> Div for Twofold<T> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * Self::from_real(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Self::from_real(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_real(q3)
    }
}

const LN_2: (f64, f64) = (std::f64::consts::LN_2, 2.3190468138462996e-17);
const FRAC_PI_2: (f64, f64) = (std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);

impl<T: Real> Twofold<T> {
    fn constant(c: (f64, f64)) -> Self {
        Self::new(lit(c.0), lit(c.1))
    }

    fn scale(self, k: T) -> Self {
        Self { hi: self.hi * k, lo: self.lo * k }
    }

    /// `e^x`. Reduces by `ln 2`, then by `2^-8`, sums the Taylor series and
    /// squares back.
    pub fn exp(self) -> Self {
        if self.hi.is_nan() {
            return self;
        }
        if self.hi > lit(709.0) {
            return Self::from_real(T::infinity());
        }
        if self.hi < lit(-745.0) {
            return Self::zero();
        }
        let k = (self.hi / lit::<T>(LN_2.0)).round();
        let r = (self - Self::constant(LN_2) * Self::from_real(k)).scale(lit(1.0 / 256.0));
        let mut term = Self::from_real(T::one());
        let mut sum = term;
        for n in 1..=12 {
            term = term * r / Self::from_real(from_i64(n));
            sum = sum + term;
        }
        for _ in 0..8 {
            sum = sum * sum;
        }
        let k = k.to_i32().unwrap_or(0);
        // 2^k in two steps so neither factor overflows
        let half = k / 2;
        sum.scale(lit::<T>(2.0).powi(half)).scale(lit::<T>(2.0).powi(k - half))
    }

    /// Natural logarithm of a positive value, one Newton step from `T`.
    pub fn ln(self) -> Self {
        let y = Self::from_real(self.hi.ln());
        y + self * (-y).exp() - Self::from_real(T::one())
    }

    /// `(sin x, cos x)`. Reduces by `π/2` and sums both Taylor series.
    pub fn sin_cos(self) -> (Self, Self) {
        let k = (self.hi / lit::<T>(FRAC_PI_2.0)).round();
        let r = self - Self::constant(FRAC_PI_2) * Self::from_real(k);
        let r2 = r * r;
        let (mut sin, mut cos) = (r, Self::from_real(T::one()));
        let (mut ts, mut tc) = (r, Self::from_real(T::one()));
        for n in 1..=14i64 {
            ts = -(ts * r2 / Self::from_real(from_i64((2 * n) * (2 * n + 1))));
            tc = -(tc * r2 / Self::from_real(from_i64((2 * n - 1) * (2 * n))));
            sin = sin + ts;
            cos = cos + tc;
        }
        match k.to_i64().unwrap_or(0).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }
}

/// Complex number with [`Twofold`] parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TwofoldComplex<T: Real> {
    pub re: Twofold<T>,
    pub im: Twofold<T>,
}

impl<T: Real> TwofoldComplex<T> {
    pub fn new(re: Twofold<T>, im: Twofold<T>) -> Self {
        Self { re, im }
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self { re: Twofold::from_real(z.re), im: Twofold::from_real(z.im) }
    }

    pub fn from_real(x: T) -> Self {
        Self::from_complex(Complex::new(x, T::zero()))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_real(from_i64(n))
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero())
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re.to_real(), self.im.to_real())
    }

    /// Leading-part magnitude, adequate for bookkeeping.
    pub fn norm(self) -> T {
        Complex::new(self.re.hi, self.im.hi).norm()
    }

    pub fn norm_sqr(self) -> Twofold<T> {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    /// Principal square root, one Newton step from the `T` estimate.
    pub fn sqrt(self) -> Self {
        let s0 = Self::from_complex(self.to_complex().sqrt());
        let half = Twofold::from_real(lit::<T>(0.5));
        let s = s0 + self / s0;
        Self { re: s.re * half, im: s.im * half }
    }
}

impl<T: Real> TwofoldComplex<T> {
    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (sin, cos) = self.im.sin_cos();
        Self { re: m * cos, im: m * sin }
    }

    /// Principal logarithm of a nonzero value.
    pub fn ln(self) -> Self {
        let modulus = self.norm_sqr().ln().scale(lit(0.5));
        // rotate by the T-precision argument; the leftover angle is tiny
        let theta0 = self.im.hi.atan2(self.re.hi);
        let (sin, cos) = Twofold::from_real(theta0).sin_cos();
        let rotated = self * Self { re: cos, im: -sin };
        let theta = Twofold::from_real(theta0) + rotated.im / rotated.re;
        Self { re: modulus, im: theta }
    }
}

impl<T: Real> Add for TwofoldComplex<T> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self { re: self.re + b.re, im: self.im + b.im }
    }
}

impl<T: Real> Sub for TwofoldComplex<T> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self { re: self.re - b.re, im: self.im - b.im }
    }
}

impl<T: Real> Neg for TwofoldComplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl<T: Real> Mul for TwofoldComplex<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}

impl<T: Real> Div for TwofoldComplex<T> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        // scale by the leading magnitude first to keep |b|² in range
        let s = b.re.hi.abs().max(b.im.hi.abs());
        let inv_s = Twofold::from_real(T::one() / s);
        let (br, bi) = (b.re * inv_s, b.im * inv_s);
        let (ar, ai) = (self.re * inv_s, self.im * inv_s);
        let den = br * br + bi * bi;
        Self { re: (ar * br + ai * bi) / den, im: (ai * br - ar * bi) / den }
    }
}

// Coefficients of Γ(x+1/2)/Γ(x) ~ √x Σ_k c_k x^{-k}, as (hi, lo) pairs.
const HALF_RATIO_COEF: [(f64, f64); 18] = [
    (1.0, 0.0),
    (-0.125, 0.0),
    (0.0078125, 0.0),
    (0.0048828125, 0.0),
    (-0.000640869140625, 0.0),
    (-0.001522064208984375, 0.0),
    (0.0002071857452392578, 0.0),
    (0.0011719763278961182, 0.0),
    (-0.0001557529903948307, 0.0),
    (-0.0016715728561393917, 0.0),
    (0.00021717708659707569, 0.0),
    (0.003820047111275926, 0.0),
    (-0.0004892696652092354, 0.0),
    (-0.012788446944957954, 0.0),
    (0.0016244333185305715, 0.0),
    (0.058997348216001735, 0.0),
    (-0.007457947085025542, 3.2526065174565133e-19),
    (-0.35881637534911764, 2.4028630647709992e-17),
];

const HALF_RATIO_SHIFT: f64 = 60.0;

/// `Γ(a + 1/2) / Γ(a)` in double-word precision.
///
/// Shifts `a` up until `Re a >= 60`, applies the asymptotic expansion and
/// undoes the shift with the product `Π (a+k)/(a+k+1/2)`. Returns zero when
/// `a` is a nonpositive integer (pole of `Γ(a)`).
pub fn half_step_gamma_ratio<T: Real>(a: Complex<T>) -> TwofoldComplex<T> {
    if a.im == T::zero() && a.re <= T::zero() && a.re.fract() == T::zero() {
        return TwofoldComplex::zero();
    }
    let shift = (lit::<T>(HALF_RATIO_SHIFT) - a.re).ceil().max(T::zero()).to_i64().unwrap_or(0);
    let a_dd = TwofoldComplex::from_complex(a);
    let x = a_dd + TwofoldComplex::from_i64(shift);
    let inv_x = TwofoldComplex::from_real(T::one()) / x;
    let mut series = TwofoldComplex::zero();
    for &(hi, lo) in HALF_RATIO_COEF.iter().rev() {
        let c = TwofoldComplex::new(Twofold::new(lit(hi), lit(lo)), Twofold::zero());
        series = series * inv_x + c;
    }
    let mut ratio = x.sqrt() * series;
    let half = TwofoldComplex::from_real(lit::<T>(0.5));
    for k in 0..shift {
        let ak = a_dd + TwofoldComplex::from_i64(k);
        ratio = ratio * (ak / (ak + half));
    }
    ratio
}
