mod common;

use std::f64::consts::PI;

use common::{inerfc_integral, kummer_m_series, kummer_u_integral, rel_err, rng};
use proptest::prelude::*;
use rand::Rng;
use stefan_core::specfun::{en_fn, erf, gamma, inerfc, kummer_m, kummer_u, KummerArgs};

/// Samples where M keeps one sign, so a relative error is meaningful.
fn sign_definite_sample(r: &mut impl Rng) -> (f64, f64, f64) {
    loop {
        let a = r.random_range(-4.0..4.0);
        let b = r.random_range(0.2..4.0);
        let z = r.random_range(-50.0..50.0);
        if (z >= 0.0 && a >= 0.0) || (z < 0.0 && b - a >= 0.0) {
            return (a, b, z);
        }
    }
}

#[test]
fn kummer_m_matches_big_integer_series() {
    let mut r = rng(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (a, b, z) = sign_definite_sample(&mut r);
        let reference = kummer_m_series(a, b, z, 256);
        let err = rel_err(kummer_m(a, b, z).unwrap(), reference);
        assert!(err < 1e-10, "M({a}, {b}, {z}): rel err {err:e}");
        worst = worst.max(err);
    }
    assert!(worst < 1e-10);
}

#[test]
fn kummer_m_model_families_match_series() {
    // the parameter pairs that occur in the temperature profiles and front equation
    let mut r = rng(0x5eed_0002);
    for _ in 0..60 {
        let alpha = r.random_range(0.0..4.0);
        let x: f64 = r.random_range(0.0..7.0);
        let cases = [
            (-0.5 * alpha, 0.5, -x * x),
            (0.5 - 0.5 * alpha, 1.5, -x * x),
            (0.5 * alpha + 0.5, 0.5, x * x),
            (0.5 * alpha + 1.0, 1.5, x * x),
            (1.0 - 0.5 * alpha, 1.5, -x * x),
            (0.5 - 0.5 * alpha, 0.5, -x * x),
        ];
        for (a, b, z) in cases {
            let err = rel_err(kummer_m(a, b, z).unwrap(), kummer_m_series(a, b, z, 256));
            assert!(err < 1e-10, "M({a}, {b}, {z}): rel err {err:e}");
        }
    }
}

#[test]
fn kummer_m_beyond_series_range() {
    for &(a, b, z) in &[
        (0.3, 0.5, -120.0),
        (-1.25, 0.5, -150.0),
        (0.5, 1.5, -200.0),
        (1.75, 0.5, 120.0),
        (2.25, 1.5, 160.0),
    ] {
        let reference = kummer_m_series(a, b, z, 768);
        let err = rel_err(kummer_m(a, b, z).unwrap(), reference);
        assert!(err < 1e-10, "M({a}, {b}, {z}): rel err {err:e}");
    }
}

#[test]
fn kummer_m_reference_values() {
    assert_eq!(kummer_m(0.7, 0.5, 0.0).unwrap(), 1.0);
    assert_eq!(kummer_m(0.0, 0.5, 3.2).unwrap(), 1.0);
    let v = kummer_m(1.0, 2.0, 1.0).unwrap();
    assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-14);
    assert!((v - kummer_m_series(1.0, 2.0, 1.0, 256)).abs() < 1e-14);
    assert!(KummerArgs::new(1.0, -2.0, 0.5).m().is_err());
}

#[test]
fn kummer_u_matches_integral_representation() {
    let mut r = rng(0x5eed_0003);
    for _ in 0..100 {
        let a = r.random_range(0.1..4.0);
        let b = r.random_range(0.1..3.0);
        let z = r.random_range(0.1..25.0);
        let reference = kummer_u_integral(a, b, z);
        let err = rel_err(kummer_u(a, b, z).unwrap(), reference);
        assert!(err < 1e-8, "U({a}, {b}, {z}): rel err {err:e}");
    }
}

#[test]
fn kummer_u_front_equation_family() {
    for alpha in [0.0, 0.3, 1.0, 1.7, 2.0, 3.4] {
        for z in [0.1, 0.8, 3.0, 11.0, 25.0] {
            let a = 0.5 * alpha + 0.5;
            let reference = kummer_u_integral(a, 0.5, z);
            let err = rel_err(kummer_u(a, 0.5, z).unwrap(), reference);
            assert!(err < 1e-8, "U({a}, 0.5, {z}): rel err {err:e}");
        }
    }
}

#[test]
fn kummer_u_reference_values() {
    let v = kummer_u(0.5, 0.5, 1.0).unwrap();
    let closed = PI.sqrt() * std::f64::consts::E * libm::erfc(1.0);
    assert!((v - 0.757_872_156_141_312).abs() < 1e-7 && rel_err(v, closed) < 1e-12);
    let v = kummer_u(1.3, 0.5, 4.0).unwrap();
    assert!(rel_err(v, kummer_u_integral(1.3, 0.5, 4.0)) < 1e-8);
    let v = kummer_u(0.75, 0.5, 20.0).unwrap();
    assert!(rel_err(v, 20f64.powf(-0.75)) < 0.05);
}

#[test]
fn kummer_u_large_argument_power_law() {
    for a in [0.5, 0.75, 1.25, 2.0] {
        let z: f64 = 1e3;
        let v = kummer_u(a, 0.5, z).unwrap() * z.powf(a);
        assert!((v - 1.0).abs() < 0.02, "a = {a}: {v}");
    }
}

#[test]
fn inerfc_matches_integral() {
    for n in 0..=4u32 {
        for x in [0.0, 0.2, 0.5, 1.0, 2.5, 4.0, 7.0, 10.0] {
            let err = rel_err(inerfc(n, x).unwrap(), inerfc_integral(n, x));
            assert!(err < 1e-9, "i^{n} erfc({x}): rel err {err:e}");
        }
    }
    for n in [6u32, 10, 15] {
        for x in [-3.0, -0.5, 0.0, 0.7, 3.0, 8.0] {
            let err = rel_err(inerfc(n, x).unwrap(), inerfc_integral(n, x));
            assert!(err < 1e-9, "i^{n} erfc({x}): rel err {err:e}");
        }
    }
}

#[test]
fn inerfc_examples() {
    assert_eq!(inerfc(0, 0.0).unwrap(), 1.0);
    assert!((inerfc(1, 0.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
    // i^2 erfc(1) as a double integral: int_1^inf int_t^inf erfc(u) du dt
    let nested = common::exp_sinh(|_, s| {
        let inner = common::exp_sinh(|_, u| libm::erfc(1.0 + s + u).ln());
        inner.ln()
    });
    assert!(rel_err(inerfc(2, 1.0).unwrap(), nested) < 1e-9);
}

#[test]
fn en_fn_examples() {
    let (e, f) = en_fn(0, 1.3).unwrap();
    assert_eq!(e, 1.0);
    assert!((f - erf(1.3)).abs() < 1e-16);
    assert_eq!(en_fn(0, 0.0).unwrap(), (1.0, 0.0));
    let (e, f) = en_fn(2, 0.7).unwrap();
    let z: f64 = 0.7;
    let e_ref = kummer_m_series(-1.0, 0.5, -z * z, 256) / (4.0 * gamma(2.0).unwrap());
    let f_ref = z * kummer_m_series(-0.5, 1.5, -z * z, 256) / (2.0 * gamma(1.5).unwrap());
    assert!(rel_err(e, e_ref) < 1e-12 && rel_err(f, f_ref) < 1e-12);
}

#[test]
fn repeated_erfc_identities() {
    for n in 0..=6u32 {
        let nf = n as f64;
        for k in 0..=30 {
            let z = 0.1 * k as f64;
            let (e, f) = en_fn(n, z).unwrap();
            let even = kummer_m(-0.5 * nf, 0.5, -z * z).unwrap();
            let odd = z * kummer_m(0.5 - 0.5 * nf, 1.5, -z * z).unwrap();
            let e_side = 2f64.powi(n as i32) * gamma(0.5 * nf + 1.0).unwrap() * e;
            let f_side = 2f64.powi(n as i32 - 1) * gamma(0.5 * nf + 0.5).unwrap() * f;
            assert!(rel_err(e_side, even) < 1e-8, "n={n} z={z}");
            assert!(
                (f_side - odd).abs() <= 1e-8 * odd.abs().max(1e-300),
                "n={n} z={z}"
            );
        }
    }
}

#[test]
fn exponential_product_identity() {
    for alpha in [0.3, 1.5, 2.7] {
        for k in 0..=30 {
            let z = 0.1 * k as f64;
            let w = -z * z;
            let m = |a: f64, b: f64| kummer_m(a, b, w).unwrap();
            let lhs = -2.0 * alpha * z * z * m(0.5 - 0.5 * alpha, 1.5) * m(1.0 - 0.5 * alpha, 1.5)
                + m(-0.5 * alpha, 0.5) * m(0.5 - 0.5 * alpha, 0.5);
            assert!((lhs - w.exp()).abs() < 1e-8, "alpha={alpha} z={z}: {lhs}");
        }
    }
}

#[test]
fn derivative_identities() {
    let central = |f: &dyn Fn(f64) -> f64, z: f64| {
        let h = 1e-5 * z.max(1.0);
        (f(z + h) - f(z - h)) / (2.0 * h)
    };
    for a in [0.3, 0.75, 1.6] {
        for b in [0.5, 1.5, 2.3] {
            for z in [0.5, 2.0, 7.0] {
                let fd = central(&|z| kummer_m(a, b, z).unwrap(), z);
                let rhs = a / b * kummer_m(a + 1.0, b + 1.0, z).unwrap();
                assert!(
                    (fd - rhs).abs() < 1e-6 * rhs.abs().max(1.0),
                    "dM a={a} b={b} z={z}"
                );

                let fd = central(&|z: f64| z.powf(b - 1.0) * kummer_m(a, b, z).unwrap(), z);
                let rhs = (b - 1.0) * z.powf(b - 2.0) * kummer_m(a, b - 1.0, z).unwrap();
                assert!(
                    (fd - rhs).abs() < 1e-6 * rhs.abs().max(1.0),
                    "dzM a={a} b={b} z={z}"
                );

                let fd = central(&|z| kummer_u(a, b, z).unwrap(), z);
                let rhs = -a * kummer_u(a + 1.0, b + 1.0, z).unwrap();
                assert!(
                    (fd - rhs).abs() < 1e-6 * rhs.abs().max(1.0),
                    "dU a={a} b={b} z={z}"
                );
            }
        }
    }
}

#[test]
fn m_from_u_on_both_branches() {
    // M(a,b,z)/Gamma(b) = e^{i pi a} U(a,b,z)/Gamma(b-a) + e^{-i pi (b-a)} e^z U(b-a,b,z e^{-i pi})/Gamma(a).
    // U at z e^{-i pi} is expanded through its two-term definition with real M values.
    let g = libm::tgamma;
    for a in [0.2, 0.45, 0.8] {
        for b in [0.5, 1.5, 2.3] {
            for z in [0.3, 1.0, 4.0] {
                let c = b - a;
                let p = g(1.0 - b) / g(c - b + 1.0) * kummer_m(c, b, -z).unwrap();
                let q = g(b - 1.0) / g(c)
                    * z.powf(1.0 - b)
                    * kummer_m(c - b + 1.0, 2.0 - b, -z).unwrap();
                let u = kummer_u(a, b, z).unwrap();
                let ez = z.exp() / g(a);
                let re = (a * PI).cos() * u / g(c)
                    + ez * (p * (c * PI).cos() + q * ((1.0 - a) * PI).cos());
                let im = (a * PI).sin() * u / g(c)
                    - ez * (p * (c * PI).sin() + q * ((1.0 - a) * PI).sin());
                let lhs = kummer_m(a, b, z).unwrap() / g(b);
                assert!(
                    (re - lhs).abs() < 1e-7 * lhs.abs().max(1.0),
                    "a={a} b={b} z={z}"
                );
                assert!(
                    im.abs() < 1e-7 * lhs.abs().max(1.0),
                    "a={a} b={b} z={z}: im {im}"
                );
            }
        }
    }
}

#[test]
fn legendre_duplication() {
    for x in [0.8, 1.3, 2.9, 7.1] {
        let lhs = gamma(x).unwrap() * gamma(x + 0.5).unwrap();
        let rhs = PI.sqrt() * 2f64.powf(1.0 - 2.0 * x) * gamma(2.0 * x).unwrap();
        assert!(rel_err(lhs, rhs) < 1e-12);
    }
}

fn valid_b() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_filter("b away from poles", |b| {
        *b > 0.05 || (b - b.round()).abs() > 0.05
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn m_is_one_at_origin(a in -10.0f64..10.0, b in valid_b()) {
        prop_assert_eq!(kummer_m(a, b, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn kummer_transformation(a in -3.0f64..3.0, b in valid_b(), z in -20.0f64..20.0) {
        let lhs = kummer_m(a, b, z).unwrap();
        let rhs = z.exp() * kummer_m(b - a, b, -z).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs(), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn u_positive_and_decreasing(a in 0.05f64..4.0, b in 0.1f64..3.0, z in 0.1f64..30.0) {
        let u0 = kummer_u(a, b, z).unwrap();
        let u1 = kummer_u(a, b, z * 1.1).unwrap();
        prop_assert!(u0 > 0.0 && u1 < u0);
    }

    #[test]
    fn inerfc_positive_and_decreasing(n in 0u32..12, x in -5.0f64..9.0) {
        let v0 = inerfc(n, x).unwrap();
        let v1 = inerfc(n, x + 0.25).unwrap();
        prop_assert!(v0 > 0.0 && v1 < v0);
    }

    #[test]
    fn inerfc_recurrence(n in 1u32..14, x in -3.0f64..6.0) {
        // 2n i^n erfc(x) = i^{n-2} erfc(x) - 2x i^{n-1} erfc(x)
        let lower = if n >= 2 { inerfc(n - 2, x).unwrap() } else { 2.0 / PI.sqrt() * (-x * x).exp() };
        let lhs = 2.0 * n as f64 * inerfc(n, x).unwrap();
        let rhs = lower - 2.0 * x * inerfc(n - 1, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lower.abs().max(lhs.abs()));
    }
}
