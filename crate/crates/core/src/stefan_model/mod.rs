//! Two-phase melting of a semi-infinite solid with latent heat `gamma x^alpha`, initial
//! temperature `-T_i x^alpha` and a convective condition
//! `k_l Psi_x(0,t) = h0 t^{-1/2} [Psi(0,t) - T_inf t^{alpha/2}]` at the fixed face.
//!
//! Melting starts instantly iff `h0` exceeds [`StefanProblem::h0_threshold`]; the front is
//! then `s(t) = 2 nu sqrt(d_l t)` with `nu` the root of the front equation
//! `LHS(x) = x^{alpha+1}` (see [`front_equation_lhs`]). Otherwise the material only conducts.

mod conduction;
mod integer;
mod profile;
mod solution;

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::root_solver::{solve_monotone, MonotoneRootSpec};
use crate::specfun::{gamma, kummer_m, kummer_u};

pub use conduction::ConductionSolution;
pub use integer::{integer_liquid_temperature, integer_solid_temperature, solve_integer_alpha};
pub use profile::SimilarityProfile;
pub use solution::{coefficients_from_nu, Coefficients, FreeBoundary, Route, SimilaritySolution};

/// |alpha - round(alpha)| below this routes to the integer-order formulas.
pub const INTEGER_ALPHA_TOL: f64 = 1e-12;

/// Thermal properties of one phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseProps {
    /// Thermal conductivity, W/(m °C).
    pub k: f64,
    /// Diffusivity, m^2/s.
    pub d: f64,
}

impl PhaseProps {
    pub fn new(k: f64, d: f64) -> Self {
        Self { k, d }
    }
}

/// Full parameter set of the melting problem, SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StefanProblem {
    /// Exponent of the latent heat and initial temperature.
    pub alpha: f64,
    /// Latent heat coefficient, kg/(s^2 m^{alpha+1}).
    pub gamma: f64,
    /// Initial temperature coefficient, °C/m^alpha.
    pub t_i: f64,
    /// Bulk temperature coefficient, °C/s^{alpha/2}.
    pub t_inf: f64,
    /// Heat transfer coefficient, kg/(°C s^{5/2}).
    pub h0: f64,
    pub liquid: PhaseProps,
    pub solid: PhaseProps,
}

impl StefanProblem {
    /// All-ones instance with the given exponent and transfer coefficient.
    pub fn unit(alpha: f64, h0: f64) -> Self {
        Self {
            alpha,
            gamma: 1.0,
            t_i: 1.0,
            t_inf: 1.0,
            h0,
            liquid: PhaseProps::new(1.0, 1.0),
            solid: PhaseProps::new(1.0, 1.0),
        }
    }

    pub fn with_h0(mut self, h0: f64) -> Self {
        self.h0 = h0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("gamma", self.gamma),
            ("t_i", self.t_i),
            ("t_inf", self.t_inf),
            ("h0", self.h0),
            ("liquid.k", self.liquid.k),
            ("liquid.d", self.liquid.d),
            ("solid.k", self.solid.k),
            ("solid.d", self.solid.d),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidProblem(format!("{name} must be > 0")));
            }
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidProblem("alpha must be >= 0".into()));
        }
        Ok(())
    }

    /// `sqrt(d_l / d_s)`.
    pub fn omega(&self) -> f64 {
        (self.liquid.d / self.solid.d).sqrt()
    }

    /// `Some(n)` when alpha is within [`INTEGER_ALPHA_TOL`] of the integer n.
    pub fn integer_alpha(&self) -> Option<u32> {
        let n = self.alpha.round();
        ((self.alpha - n).abs() < INTEGER_ALPHA_TOL && n >= 0.0).then_some(n as u32)
    }

    /// Critical transfer coefficient
    /// `2^alpha Gamma(alpha/2+1) k_s T_i d_s^{(alpha-1)/2} / (T_inf sqrt(pi))`.
    pub fn h0_threshold(&self) -> f64 {
        let a = self.alpha;
        2f64.powf(a)
            * gamma(0.5 * a + 1.0).expect("alpha >= 0")
            * self.solid.k
            * self.t_i
            * self.solid.d.powf(0.5 * (a - 1.0))
            / (self.t_inf * PI.sqrt())
    }

    /// Coefficient of f1 in the front equation (negative).
    pub(crate) fn solid_coefficient(&self) -> f64 {
        let a = self.alpha;
        -self.solid.k * self.t_i * self.solid.d.powf(0.5 * (a - 1.0))
            / (self.gamma * self.liquid.d.powf(0.5 * (a + 1.0)))
    }

    /// Coefficient of f2 in the front equation.
    pub(crate) fn liquid_coefficient(&self) -> f64 {
        let a = self.alpha;
        self.h0 * self.t_inf / (self.gamma * 2f64.powf(a) * self.liquid.d.powf(0.5 * (a + 1.0)))
    }

    /// Limit of the solid term of the front equation at x = 0 (Delta_1, negative).
    pub fn delta1(&self) -> f64 {
        self.solid_coefficient() * gamma(0.5 * self.alpha + 1.0).expect("alpha >= 0") / PI.sqrt()
    }

    /// Limit of the convective term of the front equation at x = 0 (Delta_2).
    pub fn delta2(&self) -> f64 {
        self.liquid_coefficient()
    }

    pub(crate) fn residual_tolerance(&self) -> f64 {
        1e-10 * (1.0 + self.delta1().abs() + self.delta2().abs())
    }
}

/// `1 / U(alpha/2 + 1/2, 1/2, x^2 omega^2)`; increasing from `Gamma(alpha/2+1)/sqrt(pi)`.
pub fn f1(x: f64, problem: &StefanProblem) -> Result<f64> {
    let a = problem.alpha;
    let w = x * problem.omega();
    Ok(1.0 / kummer_u(0.5 * a + 0.5, 0.5, w * w)?)
}

/// `1 / [M(alpha/2+1/2, 1/2, x^2) + 2 sqrt(d_l) h0 / k_l x M(alpha/2+1, 3/2, x^2)]`;
/// decreasing from 1 to 0.
pub fn f2(x: f64, problem: &StefanProblem) -> Result<f64> {
    let a = problem.alpha;
    let z = x * x;
    let biot = 2.0 * problem.liquid.d.sqrt() * problem.h0 / problem.liquid.k;
    let denom = kummer_m(0.5 * a + 0.5, 0.5, z)? + biot * x * kummer_m(0.5 * a + 1.0, 1.5, z)?;
    Ok(1.0 / denom)
}

/// Left-hand side of the front equation. At x = 0 it equals `delta1 + delta2`, written as
/// `delta2 (1 - threshold / h0)` so that its sign is exactly the sign of `h0 - threshold`.
pub fn front_equation_lhs(x: f64, problem: &StefanProblem) -> Result<f64> {
    if x == 0.0 {
        return Ok(problem.delta2() * (1.0 - problem.h0_threshold() / problem.h0));
    }
    Ok(problem.solid_coefficient() * f1(x, problem)?
        + problem.liquid_coefficient() * f2(x, problem)?)
}

/// Result of [`solve`]: a melting solution above the threshold, pure conduction otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    TwoPhase(SimilaritySolution),
    ConductionOnly(ConductionSolution),
}

impl SolveOutcome {
    pub fn two_phase(&self) -> Option<&SimilaritySolution> {
        match self {
            SolveOutcome::TwoPhase(s) => Some(s),
            SolveOutcome::ConductionOnly(_) => None,
        }
    }

    pub fn is_two_phase(&self) -> bool {
        matches!(self, SolveOutcome::TwoPhase(_))
    }
}

/// Solves the problem, picking the branch from the sign of the front equation at x = 0 and
/// routing (near-)integer exponents through the E_n/F_n formulas.
pub fn solve(problem: &StefanProblem) -> Result<SolveOutcome> {
    problem.validate()?;
    if front_equation_lhs(0.0, problem)? <= 0.0 {
        return Ok(SolveOutcome::ConductionOnly(ConductionSolution::new(
            problem,
        )?));
    }
    if problem.integer_alpha().is_some() {
        return solve_integer_alpha(problem);
    }
    solve_kummer(problem).map(SolveOutcome::TwoPhase)
}

/// Two-phase solution through the Kummer-function formulas regardless of whether alpha is
/// an integer. Fails with [`Error::BelowThreshold`] if melting does not occur.
pub fn solve_kummer(problem: &StefanProblem) -> Result<SimilaritySolution> {
    problem.validate()?;
    ensure_above_threshold(problem)?;
    let nu = find_front_root(problem, |x| front_equation_lhs(x, problem))?;
    SimilaritySolution::from_nu(problem, nu, Route::Kummer)
}

pub(crate) fn ensure_above_threshold(problem: &StefanProblem) -> Result<()> {
    if front_equation_lhs(0.0, problem)? > 0.0 {
        Ok(())
    } else {
        Err(Error::BelowThreshold {
            h0: problem.h0,
            threshold: problem.h0_threshold(),
        })
    }
}

/// Root of `lhs(x) = x^{alpha+1}` for a decreasing `lhs` with `lhs(0) > 0`.
pub(crate) fn find_front_root<L>(problem: &StefanProblem, lhs: L) -> Result<f64>
where
    L: Fn(f64) -> Result<f64>,
{
    let failure = RefCell::new(None);
    let exponent = problem.alpha + 1.0;
    let residual = |x: f64| match lhs(x) {
        Ok(v) => v - x.powf(exponent),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let spec = MonotoneRootSpec::new(residual)
        .with_x_lo(0.0)
        .with_tol_rel(4.0 * f64::EPSILON)
        .with_tol_res(problem.residual_tolerance());
    let root = solve_monotone(&spec);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    root
}
