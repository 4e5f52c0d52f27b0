mod common;

use auxr_core::hermite::{hermite_integral_spec, HermiteMethod::*};
use auxr_core::{
    hermite, hermite_integral, hermite_reflection_residual, hermite_series, parabolic_ode_residual, parabolic_u,
    whittaker_d, Complex64 as C, Error,
};
use common::{erfc_series, hermite_poly, rel};
use proptest::prelude::*;
use std::f64::consts::{E, PI};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn oracle_sanity() {
    assert_eq!(hermite_poly(3, c(1.0, 0.0)), c(-4.0, 0.0));
    assert_eq!(hermite_poly(2, c(1.5, 0.0)), c(7.0, 0.0));
    assert!((erfc_series(1.0) - 0.157299207050285).abs() < 1e-14);
}

#[test]
fn series_examples() {
    let one = hermite_series(c(0.0, 0.0), c(2.5, -1.0), 1e-14).unwrap();
    assert!(rel(one.value, c(1.0, 0.0)) < 1e-13);
    let half_root_pi = hermite_series(c(-1.0, 0.0), c(0.0, 0.0), 1e-14).unwrap();
    assert!(rel(half_root_pi.value, c(0.886226925452758, 0.0)) < 1e-13);
    let cubic = hermite_series(c(3.0, 0.0), c(1.0, 0.0), 1e-14).unwrap();
    assert!(rel(cubic.value, hermite_poly(3, c(1.0, 0.0))) < 1e-12);
}

#[test]
fn integral_examples() {
    let at = |nu: C, z: C| hermite_integral(nu, z, &hermite_integral_spec(nu, z, 1e-12)).unwrap().value;
    assert!(rel(at(c(-1.0, 0.0), c(0.0, 0.0)), c(PI.sqrt() / 2.0, 0.0)) < 1e-11);
    let erfc_oracle = E * PI.sqrt() / 2.0 * erfc_series(1.0);
    assert!(rel(at(c(-1.0, 0.0), c(1.0, 0.0)), c(erfc_oracle, 0.0)) < 1e-11);

    let nu = c(-0.5, -10.0);
    let z = c(2.0, 0.0);
    let series = hermite_series(nu, z, 1e-14).unwrap();
    assert!(rel(at(nu, z), series.value) < 1e-8);
}

#[test]
fn integral_refuses_nonnegative_order() {
    let nu = c(0.5, 0.0);
    let z = c(1.0, 0.0);
    let spec = hermite_integral_spec(c(-0.5, 0.0), z, 1e-10);
    assert!(matches!(hermite_integral(nu, z, &spec), Err(Error::Domain(_))));
    assert!(matches!(hermite(c(-0.5, 0.0), z, RecurrenceLift, 1e-10), Err(Error::Domain(_))));
}

#[test]
fn dispatcher_examples() {
    let h = hermite(c(0.0, 0.0), c(7.0, 2.0), Auto, 1e-12).unwrap();
    assert!(rel(h.value(), c(1.0, 0.0)) < 1e-13);
    let h = hermite(c(2.0, 0.0), c(1.5, 0.0), Auto, 1e-12).unwrap();
    assert!(rel(h.value(), c(7.0, 0.0)) < 1e-12);

    let nu = c(-0.5, 0.0);
    let z = c(-3.0, 0.0);
    let a = hermite(nu, z, Series, 1e-13).unwrap();
    let b = hermite(nu, z, IntegralRep, 1e-13).unwrap();
    assert!(rel(a.value(), b.value()) < 1e-7);
    assert_eq!(a.method, Series);
    assert_eq!(b.method, IntegralRep);
}

#[test]
fn auto_never_reports_auto() {
    for (nu, z) in [(c(-0.5, 3.0), c(1.0, 1.0)), (c(-2.5, 0.0), c(6.0, -2.0)), (c(1.5, 1.0), c(5.0, 0.0))] {
        let h = hermite(nu, z, Auto, 1e-10).unwrap();
        assert_ne!(h.method, Auto);
    }
}

#[test]
fn polynomial_orders_match_recurrence() {
    let mut rng = common::rng(11);
    for _ in 0..25 {
        let z = common::disc(&mut rng, 4.0);
        for n in 0..=10 {
            let h = hermite(c(n as f64, 0.0), z, Auto, 1e-13).unwrap();
            let want = hermite_poly(n, z);
            assert!(rel(h.value(), want) <= 1e-9, "n = {n}, z = {z}: {} vs {want}", h.value());
        }
    }
}

#[test]
fn reflection_examples() {
    assert!(hermite_reflection_residual(c(-0.5, 0.0), c(1.0, 0.0)).unwrap() <= 1e-9);
    assert!(hermite_reflection_residual(c(0.25, 0.5), c(0.5, -0.5)).unwrap() <= 1e-8);
    assert!(matches!(
        hermite_reflection_residual(c(-3.0, 0.0), c(1.0, 0.0)),
        Err(Error::Domain(_)) | Err(Error::GammaPole(_))
    ));
}

#[test]
fn parabolic_examples() {
    let u = parabolic_u(c(-0.5, 0.0), c(0.0, 0.0)).unwrap();
    assert!(rel(u.value, c(1.0, 0.0)) < 1e-13);
    // H_1(√2) = 2√2
    let want = 2.0f64.powf(-0.5) * (-1.0f64).exp() * hermite_poly(1, c(2.0f64.sqrt(), 0.0));
    let u = parabolic_u(c(-1.5, 0.0), c(2.0, 0.0)).unwrap();
    assert!(rel(u.value, want) < 1e-12);
    assert!((want.re - 0.735758882342885).abs() < 1e-14);

    let u = parabolic_u(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert!(u.value.re.is_finite() && u.value.im.is_finite());
    assert!(parabolic_ode_residual(c(0.0, 0.0), c(1.0, 0.0)).unwrap() <= 1e-6);
}

#[test]
fn whittaker_matches_parabolic() {
    let nu = c(-0.3, 1.2);
    let z = c(0.7, -0.4);
    let d = whittaker_d(nu, z).unwrap();
    let u = parabolic_u(-nu - 0.5, z).unwrap();
    assert!(rel(d.value, u.value) < 1e-14);
    // D_ν(z) = 2^{-ν/2} e^{-z²/4} H_ν(z/√2)
    let h = hermite(nu, z / 2.0f64.sqrt(), Series, 1e-14).unwrap();
    let want = (-nu / 2.0 * 2.0f64.ln()).exp() * (-z * z / 4.0).exp() * h.value();
    assert!(rel(d.value, want) < 1e-12);
}

fn order_strip() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -3.0..3.0f64).prop_map(|(x, y)| c(x, y))
}

fn small_arg() -> impl Strategy<Value = C> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| c(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn three_term_recurrence_in_order(nu in order_strip(), z in small_arg()) {
        let at = |v: C| hermite(v, z, Auto, 1e-13).unwrap().value();
        let lhs = at(nu + 1.0);
        let rhs = z * 2.0 * at(nu) - nu * 2.0 * at(nu - 1.0);
        let scale = lhs.norm().max((z * 2.0 * at(nu)).norm()).max((nu * 2.0 * at(nu - 1.0)).norm());
        prop_assert!((lhs - rhs).norm() <= 1e-8 * scale, "ν = {nu}, z = {z}");
    }

    #[test]
    fn derivative_lowers_order(nu in order_strip(), z in small_arg()) {
        // H'_ν = 2ν H_{ν-1}
        let at = |v: C, w: C| hermite(v, w, Auto, 1e-14).unwrap().value();
        let h = 1e-4;
        let d = (at(nu, z + h) - at(nu, z - h)) / (2.0 * h);
        let want = nu * 2.0 * at(nu - 1.0, z);
        prop_assert!((d - want).norm() <= 1e-6 * want.norm().max(at(nu, z).norm()).max(1.0), "ν = {nu}, z = {z}");
    }

    #[test]
    fn series_and_integral_agree(re in -5.0..-0.1f64, im in -10.0..10.0f64, z in small_arg()) {
        let nu = c(re, im);
        let s = hermite(nu, z, Series, 1e-14).unwrap();
        let i = hermite(nu, z, IntegralRep, 1e-13).unwrap();
        prop_assert!(rel(s.value(), i.value()) <= 1e-8, "ν = {nu}, z = {z}: {}", rel(s.value(), i.value()));
    }

    #[test]
    fn parabolic_equation_holds(a in small_arg(), z in small_arg()) {
        prop_assert!(parabolic_ode_residual(a, z).unwrap() <= 1e-5);
    }
}
