//! Integer exponents alpha = n, evaluated through the repeated erfc integrals:
//! `M(-n/2, 1/2, -z^2) = 2^n Gamma(n/2+1) E_n(z)` and
//! `z M(1/2 - n/2, 3/2, -z^2) = 2^{n-1} Gamma(n/2+1/2) F_n(z)`.
//!
//! Differences such as `E_n - F_n` are formed from `P = i^n erfc(z)` and `Q = i^n erfc(-z)`
//! directly (`E_n - F_n = P`), which avoids cancelling two large values when z is large.

use std::f64::consts::PI;

use super::solution::{Coefficients, Route, SimilaritySolution};
use super::{ensure_above_threshold, find_front_root, SolveOutcome, StefanProblem};
use crate::error::{Error, Result};
use crate::specfun::{en_fn, gamma, inerfc};

struct IntegerOrder {
    n: u32,
    two_n: f64,
    g_even: f64,
    g_odd: f64,
}

impl IntegerOrder {
    fn new(n: u32) -> Result<Self> {
        let nf = n as f64;
        Ok(Self {
            n,
            two_n: 2f64.powi(n as i32),
            g_even: gamma(0.5 * nf + 1.0)?,
            g_odd: gamma(0.5 * nf + 0.5)?,
        })
    }

    /// `(P, Q) = (i^n erfc(z), i^n erfc(-z))`.
    fn pq(&self, z: f64) -> Result<(f64, f64)> {
        Ok((inerfc(self.n, z)?, inerfc(self.n, -z)?))
    }
}

fn integer_order_of(problem: &StefanProblem) -> Result<u32> {
    problem.integer_alpha().ok_or_else(|| {
        Error::InvalidProblem(format!(
            "integer-order formulas need an integral alpha, got {}",
            problem.alpha
        ))
    })
}

fn front_lhs(x: f64, problem: &StefanProblem, order: &IntegerOrder) -> Result<f64> {
    let p = problem;
    let nf = order.n as f64;
    let (e, f) = en_fn(order.n, x)?;
    let liquid_denom = (x * x).exp()
        * order.two_n
        * (order.g_even * e + p.liquid.d.sqrt() * p.h0 / p.liquid.k * order.g_odd * f);
    let liquid =
        p.h0 * p.t_inf / (p.gamma * order.two_n * p.liquid.d.powf(0.5 * (nf + 1.0))) / liquid_denom;
    let y = x * p.omega();
    let tail = inerfc(order.n, y)?;
    let solid = p.solid.k * p.t_i * p.solid.d.powf(0.5 * (nf - 1.0))
        / (p.gamma * p.liquid.d.powf(0.5 * (nf + 1.0)))
        / (order.two_n * (y * y).exp() * PI.sqrt() * tail);
    Ok(liquid - solid)
}

fn coefficients(nu: f64, problem: &StefanProblem, order: &IntegerOrder) -> Result<Coefficients> {
    let p = problem;
    let nf = order.n as f64;
    let sqrt_dl = p.liquid.d.sqrt();
    let (e, f) = en_fn(order.n, nu)?;
    let even = order.two_n * order.g_even * e;
    let odd = 0.5 * order.two_n * order.g_odd * f;
    let f_l =
        -2.0 * p.h0 * p.t_inf * sqrt_dl * even / (p.liquid.k * even + 2.0 * sqrt_dl * p.h0 * odd);
    let e_l = -odd / even * f_l;

    let y = nu * p.omega();
    let (es, fs) = en_fn(order.n, y)?;
    let tail = inerfc(order.n, y)?;
    if tail <= 0.0 {
        return Err(Error::DivisionGuard {
            what: "i^n erfc(nu omega)",
            value: tail,
        });
    }
    let f_s = -p.t_i * 2.0 * order.two_n * p.solid.d.powf(0.5 * nf) * order.g_even * es
        / (PI.sqrt() * tail);
    let e_s = -(0.5 * order.g_odd * fs) / (order.g_even * es) * f_s;
    Ok(Coefficients { e_l, f_l, e_s, f_s })
}

/// Solves the problem for an integral exponent through E_n/F_n. Returns the conduction-only
/// outcome below the threshold, exactly as [`super::solve`].
pub fn solve_integer_alpha(problem: &StefanProblem) -> Result<SolveOutcome> {
    problem.validate()?;
    let n = integer_order_of(problem)?;
    if ensure_above_threshold(problem).is_err() {
        return Ok(SolveOutcome::ConductionOnly(
            super::ConductionSolution::new(problem)?,
        ));
    }
    let mut exact = *problem;
    exact.alpha = n as f64;
    let order = IntegerOrder::new(n)?;
    let nu = find_front_root(&exact, |x| {
        if x == 0.0 {
            super::front_equation_lhs(0.0, &exact)
        } else {
            front_lhs(x, &exact, &order)
        }
    })?;
    let c = coefficients(nu, &exact, &order)?;
    Ok(SolveOutcome::TwoPhase(
        SimilaritySolution::from_coefficients(&exact, nu, c, Route::IntegerAlpha(n)),
    ))
}

/// Liquid temperature from the integer-order closed form,
/// `-t^{n/2} 2^n h0 T_inf sqrt(d_l) G_o G_e [F_n(eta) E_n(nu) - F_n(nu) E_n(eta)]
///  / [k_l G_e E_n(nu) + sqrt(d_l) h0 G_o F_n(nu)]`.
pub fn integer_liquid_temperature(sol: &SimilaritySolution, x: f64, t: f64) -> Result<f64> {
    let p = &sol.problem;
    let n = integer_order_of(p)?;
    let order = IntegerOrder::new(n)?;
    let eta = x / (2.0 * (p.liquid.d * t).sqrt());
    let (pe, qe) = order.pq(eta)?;
    let (pn, qn) = order.pq(sol.nu)?;
    let (en, fn_) = en_fn(n, sol.nu)?;
    // F(eta)E(nu) - F(nu)E(eta) = (Q(eta) P(nu) - P(eta) Q(nu)) / 2
    let bracket = 0.5 * (qe * pn - pe * qn);
    let sqrt_dl = p.liquid.d.sqrt();
    let denom = p.liquid.k * order.g_even * en + sqrt_dl * p.h0 * order.g_odd * fn_;
    Ok(-t.powf(0.5 * n as f64)
        * order.two_n
        * p.h0
        * p.t_inf
        * sqrt_dl
        * order.g_odd
        * order.g_even
        * bracket
        / denom)
}

/// Solid temperature from the integer-order closed form,
/// `t^{n/2} 2^n T_i d_s^{n/2} n! [E_n(eta) F_n(y) - E_n(y) F_n(eta)] / (E_n(y) - F_n(y))`
/// with `y = nu omega`.
pub fn integer_solid_temperature(sol: &SimilaritySolution, x: f64, t: f64) -> Result<f64> {
    let p = &sol.problem;
    let n = integer_order_of(p)?;
    let order = IntegerOrder::new(n)?;
    let eta = x / (2.0 * (p.solid.d * t).sqrt());
    let y = sol.nu * sol.omega;
    let (pe, qe) = order.pq(eta)?;
    let (py, qy) = order.pq(y)?;
    // E(eta)F(y) - E(y)F(eta) = (P(eta) Q(y) - Q(eta) P(y)) / 2,  E(y) - F(y) = P(y)
    let ratio = 0.5 * (pe * qy - qe * py) / py;
    Ok(t.powf(0.5 * n as f64)
        * order.two_n
        * p.t_i
        * p.solid.d.powf(0.5 * n as f64)
        * gamma(n as f64 + 1.0)?
        * ratio)
}
