use auxr_core::{complex_gamma, complex_log_gamma, recip_gamma, Complex64 as C, Error};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

fn away_from_poles() -> impl Strategy<Value = C> {
    (-10.0..10.0f64, -10.0..10.0f64)
        .prop_map(|(x, y)| C::new(x, y))
        .prop_filter("inside |z| <= 10", |z| z.norm() <= 10.0)
        .prop_filter("0.1 away from poles", |z| (0..=11).all(|n| (z + n as f64).norm() >= 0.1))
}

#[test]
fn gamma_examples() {
    assert!(rel(complex_gamma(C::new(1.0, 0.0)).unwrap(), C::new(1.0, 0.0)) < 1e-14);
    assert!(rel(complex_gamma(C::new(0.5, 0.0)).unwrap(), C::new(1.77245385090552, 0.0)) < 1e-13);
    assert!(rel(complex_gamma(C::new(5.0, 0.0)).unwrap(), C::new(24.0, 0.0)) < 1e-13);
    assert_eq!(complex_gamma(C::new(0.0, 0.0)), Err(Error::GammaPole(0)));
}

#[test]
fn recip_gamma_examples() {
    assert_eq!(recip_gamma(C::new(-2.0, 0.0)), C::new(0.0, 0.0));
    assert!(rel(recip_gamma(C::new(1.0, 0.0)), C::new(1.0, 0.0)) < 1e-14);
    assert!(rel(recip_gamma(C::new(0.5, 0.0)), C::new(0.564189583547756, 0.0)) < 1e-13);
    for n in 0..=20 {
        assert_eq!(recip_gamma(C::new(-(n as f64), 0.0)), C::new(0.0, 0.0), "n = {n}");
    }
}

#[test]
fn log_gamma_examples() {
    assert!(complex_log_gamma(C::new(1.0, 0.0)).unwrap().norm() < 1e-14);
    assert!(complex_log_gamma(C::new(2.0, 0.0)).unwrap().norm() < 1e-14);
    let direct: f64 = (1..10).map(|k| (k as f64).ln()).sum();
    let lg = complex_log_gamma(C::new(10.0, 0.0)).unwrap();
    assert!((lg.re - direct).abs() < 1e-12 && lg.im.abs() < 1e-14);
    assert!((direct - 12.8018274800815).abs() < 1e-12);
    assert!(complex_log_gamma(C::new(-3.0, 0.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(z in away_from_poles()) {
        let lhs = complex_gamma(z + 1.0).unwrap();
        let rhs = z * complex_gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-12, "z = {z}: {}", rel(lhs, rhs));
    }

    #[test]
    fn gamma_reflection(z in away_from_poles().prop_filter("1 - z off poles", |z| {
        (0..=11).all(|n| (C::new(1.0 + n as f64, 0.0) - z).norm() >= 0.1)
    })) {
        let prod = complex_gamma(z).unwrap() * complex_gamma(-z + 1.0).unwrap() * (z * PI).sin() / PI;
        prop_assert!((prod - 1.0).norm() <= 1e-11, "z = {z}: {prod}");
    }

    #[test]
    fn recip_gamma_inverts_gamma(z in away_from_poles()) {
        let p = recip_gamma(z) * complex_gamma(z).unwrap();
        prop_assert!((p - 1.0).norm() <= 1e-12, "z = {z}: {p}");
    }

    #[test]
    fn log_gamma_exponentiates_to_gamma(z in away_from_poles().prop_filter("representable", |z| z.re > -8.0)) {
        let e = complex_log_gamma(z).unwrap().exp();
        let g = complex_gamma(z).unwrap();
        prop_assert!(rel(e, g) <= 1e-12, "z = {z}: {}", rel(e, g));
    }
}
