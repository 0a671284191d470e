//! Confluent hypergeometric (Kummer) functions M(a, b, z) and U(a, b, z) for real arguments.
//!
//! `M` is summed as a power series for `|z| <= SERIES_LIMIT`, after mapping negative
//! arguments through `M(a,b,z) = e^z M(b-a,b,-z)` so the series has no alternating tail.
//! Beyond that limit the large-argument expansions are used: for `z -> -inf` only the
//! algebraic branch survives, so `M(a,b,-x)` stays finite even when `e^{-x}` underflows.
//!
//! `U` uses the connection formula through two `M` evaluations. When the two terms
//! nearly cancel (large `z`), it switches to the integral representation
//! `U = 1/Gamma(a) * int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt`.

use super::gamma::{gamma, is_nonpositive_integer, recip_gamma};
use super::quadrature;
use crate::error::{Error, Result};

/// Series truncation: stop once a term falls below this fraction of the partial sum.
const SERIES_REL_TOL: f64 = 1e-16;
/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 500;
/// Largest |z| summed by the power series.
const SERIES_LIMIT: f64 = 100.0;
/// The connection formula is rejected when |sum| < this * max(|term|).
const CANCELLATION_RATIO: f64 = 1e-6;
/// Absolute tolerance of the U quadrature fallback.
const U_QUAD_TOL: f64 = 1e-12;

/// Arguments of a Kummer function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerArgs {
    pub fn new(a: f64, b: f64, z: f64) -> Self {
        Self { a, b, z }
    }

    pub fn m(&self) -> Result<f64> {
        kummer_m(self.a, self.b, self.z)
    }

    pub fn u(&self) -> Result<f64> {
        kummer_u(self.a, self.b, self.z)
    }
}

/// How a value of `U` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UMethod {
    /// Two-term connection formula through `M`.
    Connection,
    /// The connection terms nearly cancelled; integral representation used instead.
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UEvaluation {
    pub value: f64,
    pub method: UMethod,
}

fn check_finite(function: &'static str, values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            reason: "non-finite argument".into(),
        })
    }
}

/// Kummer's function M(a, b, z).
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    check_finite("kummer_m", &[a, b, z])?;
    if is_nonpositive_integer(b) {
        return Err(Error::Domain {
            function: "kummer_m",
            reason: format!("b = {b} is a nonpositive integer"),
        });
    }
    if z == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if is_nonpositive_integer(a) {
        return Ok(terminating_series(a, b, z));
    }
    if z > 0.0 {
        return m_positive(a, b, z);
    }
    let x = -z;
    let c = b - a;
    if is_nonpositive_integer(c) {
        return Ok(z.exp() * terminating_series(c, b, x));
    }
    if x <= SERIES_LIMIT {
        return Ok(z.exp() * series(c, b, x)?);
    }
    // M(a,b,-x) ~ Gamma(b)/Gamma(b-a) x^{-a} sum (a)_s (a-b+1)_s / s! x^{-s}
    let tail = asymptotic_sum(a, a - b + 1.0, x)?;
    Ok(gamma(b)? * recip_gamma(c) * x.powf(-a) * tail)
}

fn m_positive(a: f64, b: f64, z: f64) -> Result<f64> {
    if z <= SERIES_LIMIT {
        return series(a, b, z);
    }
    // M(a,b,z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} sum (1-a)_s (b-a)_s / s! z^{-s}
    let tail = asymptotic_sum(1.0 - a, b - a, z)?;
    let log_mag = z + (a - b) * z.ln();
    let prefactor = gamma(b)? * recip_gamma(a);
    let value = if log_mag < 700.0 {
        prefactor * log_mag.exp() * tail
    } else {
        let sign = (prefactor * tail).signum();
        let log_total = log_mag + (prefactor * tail).abs().ln();
        if log_total > 709.0 {
            sign * f64::INFINITY
        } else {
            sign * log_total.exp()
        }
    };
    Ok(value)
}

fn terminating_series(a: f64, b: f64, z: f64) -> f64 {
    let n = (-a).round() as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..n {
        let sf = s as f64;
        term *= (a + sf) * z / ((b + sf) * (sf + 1.0));
        sum += term;
    }
    sum
}

fn series(a: f64, b: f64, z: f64) -> Result<f64> {
    // Terms decrease monotonically only once s has passed -a and -b.
    let settle = (-a).max(-b).max(0.0) + 1.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        term *= (a + sf) * z / ((b + sf) * (sf + 1.0));
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow {
                function: "kummer_m",
            });
        }
        if sf > settle && term.abs() <= SERIES_REL_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "kummer_m",
        terms: MAX_TERMS,
    })
}

/// sum_s (p)_s (q)_s / s! x^{-s}, truncated at the smallest term.
fn asymptotic_sum(p: f64, q: f64, x: f64) -> Result<f64> {
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / ((sf + 1.0) * x);
        if next == 0.0 {
            return Ok(sum);
        }
        if next.abs() > term.abs() {
            if term.abs() <= 1e-13 * sum.abs() {
                return Ok(sum);
            }
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= SERIES_REL_TOL * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "kummer asymptotic expansion",
        terms: MAX_TERMS,
    })
}

/// Tricomi's function U(a, b, z) for real `z >= 0`.
pub fn kummer_u(a: f64, b: f64, z: f64) -> Result<f64> {
    kummer_u_detailed(a, b, z).map(|e| e.value)
}

/// Like [`kummer_u`], also reporting which evaluation route was taken.
pub fn kummer_u_detailed(a: f64, b: f64, z: f64) -> Result<UEvaluation> {
    check_finite("kummer_u", &[a, b, z])?;
    if z < 0.0 {
        return Err(Error::Domain {
            function: "kummer_u",
            reason: format!("negative argument z = {z}"),
        });
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(a - b + 1.0) {
        return Err(Error::Domain {
            function: "kummer_u",
            reason: format!(
                "a = {a} or a-b+1 = {} is a nonpositive integer",
                a - b + 1.0
            ),
        });
    }
    let b_integer = b == b.round();
    if z == 0.0 {
        if b < 1.0 && !b_integer {
            return Ok(UEvaluation {
                value: gamma(1.0 - b)? * recip_gamma(a - b + 1.0),
                method: UMethod::Connection,
            });
        }
        return Err(Error::Domain {
            function: "kummer_u",
            reason: format!("U(a, {b}, 0) is singular"),
        });
    }

    if !b_integer && z <= SERIES_LIMIT {
        let first = gamma(1.0 - b)? * recip_gamma(a - b + 1.0) * kummer_m(a, b, z)?;
        let second =
            gamma(b - 1.0)? * recip_gamma(a) * z.powf(1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z)?;
        let sum = first + second;
        let scale = first.abs().max(second.abs());
        if sum.is_finite() && sum.abs() >= CANCELLATION_RATIO * scale {
            return Ok(UEvaluation {
                value: sum,
                method: UMethod::Connection,
            });
        }
    }
    if a <= 0.0 {
        return Err(Error::Cancellation {
            function: "kummer_u",
            a,
        });
    }
    Ok(UEvaluation {
        value: u_by_quadrature(a, b, z)?,
        method: UMethod::Quadrature,
    })
}

/// Integral representation with t = u/z:
/// `U = z^{-a}/Gamma(a) int_0^inf e^{-u} u^{a-1} (1+u/z)^{b-a-1} du`.
/// For `a < 1` the substitution `u = v^{1/a}` removes the endpoint singularity.
pub(crate) fn u_by_quadrature(a: f64, b: f64, z: f64) -> Result<f64> {
    let c = b - a - 1.0;
    let integral = if a < 1.0 {
        let inv = 1.0 / a;
        let f = |v: f64| {
            if v == 0.0 {
                return 1.0;
            }
            let u = v.powf(inv);
            (-u).exp() * (1.0 + u / z).powf(c)
        };
        let peak = 60f64.powf(a);
        quadrature::integrate_to_infinity(f, peak, U_QUAD_TOL)? * recip_gamma(a + 1.0)
    } else {
        let f = |u: f64| {
            if u == 0.0 {
                return if a == 1.0 { 1.0 } else { 0.0 };
            }
            (-u + (a - 1.0) * u.ln()).exp() * (1.0 + u / z).powf(c)
        };
        let peak = a + 40.0 + 10.0 * a.sqrt();
        quadrature::integrate_to_infinity(f, peak, U_QUAD_TOL * gamma(a)?.max(1.0))?
            * recip_gamma(a)
    };
    Ok(z.powf(-a) * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(kummer_m(0.7, 0.5, 0.0).unwrap(), 1.0);
        assert_eq!(kummer_m(0.0, 0.5, 3.2).unwrap(), 1.0);
        assert!(rel(kummer_m(1.0, 2.0, 1.0).unwrap(), E - 1.0) < 1e-14);
    }

    #[test]
    fn exponential_special_case() {
        for z in [-120.0, -30.0, -1.5, 0.3, 7.0, 60.0] {
            let m = kummer_m(0.5, 0.5, z).unwrap();
            assert!(rel(m, f64::exp(z)) < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn erf_special_case() {
        // M(1/2, 3/2, -x^2) = sqrt(pi) erf(x) / (2x)
        for x in [0.1, 1.0, 3.0, 12.0] {
            let m = kummer_m(0.5, 1.5, -x * x).unwrap();
            let expected = PI.sqrt() * libm::erf(x) / (2.0 * x);
            assert!(rel(m, expected) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn polynomial_case() {
        // M(-1, 1/2, -x^2) = 1 + 2x^2
        for x in [0.5, 4.0, 1e3] {
            let m = kummer_m(-1.0, 0.5, -x * x).unwrap();
            assert!(rel(m, 1.0 + 2.0 * x * x) < 1e-14);
        }
    }

    #[test]
    fn series_asymptotic_seam_is_continuous() {
        for (a, b) in [(0.35, 0.5), (-0.35, 0.5), (1.2, 1.5), (-1.7, 1.5)] {
            let inside = kummer_m(a, b, -SERIES_LIMIT).unwrap();
            let outside = kummer_m(a, b, -SERIES_LIMIT * (1.0 + 1e-12)).unwrap();
            assert!(
                rel(inside, outside) < 1e-10,
                "({a},{b}): {inside} vs {outside}"
            );
            let inside = kummer_m(a, b, SERIES_LIMIT).unwrap();
            let outside = kummer_m(a, b, SERIES_LIMIT * (1.0 + 1e-12)).unwrap();
            assert!(
                rel(inside, outside) < 1e-10,
                "({a},{b}): {inside} vs {outside}"
            );
        }
    }

    #[test]
    fn invalid_b_rejected() {
        assert!(matches!(
            kummer_m(0.3, -2.0, 1.0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(kummer_m(0.3, 0.0, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn u_half_half_is_scaled_erfc() {
        for z in [0.01f64, 1.0, 4.0, 30.0, 400.0] {
            let expected = PI.sqrt() * z.exp() * libm::erfc(z.sqrt());
            let u = kummer_u(0.5, 0.5, z).unwrap();
            assert!(rel(u, expected) < 1e-9, "z = {z}: {u} vs {expected}");
        }
    }

    #[test]
    fn u_at_zero() {
        let u = kummer_u(0.5, 0.5, 0.0).unwrap();
        assert!(rel(u, PI.sqrt()) < 1e-15);
        assert!(kummer_u(0.5, 1.5, 0.0).is_err());
    }

    #[test]
    fn u_switches_to_quadrature_on_cancellation() {
        let small = kummer_u_detailed(1.3, 0.5, 4.0).unwrap();
        assert_eq!(small.method, UMethod::Connection);
        let large = kummer_u_detailed(0.75, 0.5, 20.0).unwrap();
        assert_eq!(large.method, UMethod::Quadrature);
        assert!(rel(large.value, 20f64.powf(-0.75)) < 0.05);
    }

    #[test]
    fn u_routes_agree_where_both_apply() {
        for &(a, z) in &[(0.55, 2.0), (1.3, 4.0), (2.25, 1.0), (0.95, 8.0)] {
            let conn = kummer_u_detailed(a, 0.5, z).unwrap();
            assert_eq!(conn.method, UMethod::Connection);
            let quad = u_by_quadrature(a, 0.5, z).unwrap();
            assert!(rel(conn.value, quad) < 1e-9, "a={a} z={z}");
        }
    }

    #[test]
    fn u_rejects_excluded_parameters() {
        assert!(kummer_u(-1.0, 0.5, 1.0).is_err());
        assert!(kummer_u(0.5, 0.5, -1.0).is_err());
        assert!(kummer_u(-0.5, 1.5, 1.0).is_err());
    }
}
