use super::{SimilarityProfile, StefanProblem};
use crate::error::{Error, Result};
use crate::specfun::{kummer_m, kummer_u};

const DENOMINATOR_FLOOR: f64 = 1e-300;
/// Relative slack on the phase-domain guard so that `x = s(t)` computed elsewhere is accepted.
const FRONT_SLACK: f64 = 1e-12;

fn guard(what: &'static str, value: f64) -> Result<f64> {
    if value.abs() < DENOMINATOR_FLOOR || !value.is_finite() {
        Err(Error::DivisionGuard { what, value })
    } else {
        Ok(value)
    }
}

/// Which closed-form route produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Kummer,
    IntegerAlpha(u32),
}

/// Temperature expansion coefficients of both phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub e_l: f64,
    pub f_l: f64,
    pub e_s: f64,
    pub f_s: f64,
}

/// Coefficients of the liquid and solid profiles for a given front coefficient `nu`:
/// continuity at the front, the convective condition at x = 0 and the initial temperature.
pub fn coefficients_from_nu(nu: f64, problem: &StefanProblem) -> Result<Coefficients> {
    if !(nu > 0.0) {
        return Err(Error::InvalidProblem(format!("nu must be > 0, got {nu}")));
    }
    let a = problem.alpha;
    let sqrt_dl = problem.liquid.d.sqrt();
    let z = nu * nu;
    let even = guard("M(-alpha/2, 1/2, -nu^2)", kummer_m(-0.5 * a, 0.5, -z)?)?;
    let odd = nu * kummer_m(0.5 - 0.5 * a, 1.5, -z)?;
    let denom = guard(
        "k_l M + 2 sqrt(d_l) h0 nu M",
        problem.liquid.k * even + 2.0 * sqrt_dl * problem.h0 * odd,
    )?;
    let f_l = -2.0 * problem.h0 * problem.t_inf * sqrt_dl * even / denom;
    let e_l = -odd / even * f_l;

    let y = nu * problem.omega();
    let zs = y * y;
    let even_s = guard(
        "M(-alpha/2, 1/2, -nu^2 omega^2)",
        kummer_m(-0.5 * a, 0.5, -zs)?,
    )?;
    let odd_s = y * kummer_m(0.5 - 0.5 * a, 1.5, -zs)?;
    let u = guard(
        "U(alpha/2+1/2, 1/2, nu^2 omega^2)",
        kummer_u(0.5 * a + 0.5, 0.5, zs)?,
    )?;
    let f_s = -problem.t_i
        * 2f64.powf(a + 1.0)
        * problem.solid.d.powf(0.5 * a)
        * kummer_m(0.5 * a + 0.5, 0.5, zs)?
        / u;
    let e_s = -odd_s / even_s * f_s;
    Ok(Coefficients { e_l, f_l, e_s, f_s })
}

/// Behaviour shared by the convective and the prescribed-temperature free-boundary solutions.
pub trait FreeBoundary {
    fn problem(&self) -> &StefanProblem;
    /// Front coefficient, `s(t) = 2 nu sqrt(d_l t)`.
    fn front_coefficient(&self) -> f64;
    fn liquid_profile(&self) -> SimilarityProfile;
    fn solid_profile(&self) -> SimilarityProfile;

    /// Front position; zero at t = 0.
    fn eval_front(&self, t: f64) -> f64 {
        2.0 * self.front_coefficient() * (self.problem().liquid.d * t.max(0.0)).sqrt()
    }

    fn front_velocity(&self, t: f64) -> f64 {
        self.front_coefficient() * (self.problem().liquid.d / t).sqrt()
    }

    /// Liquid temperature, defined on `0 <= x <= s(t)`.
    fn eval_liquid(&self, x: f64, t: f64) -> Result<f64> {
        let front = self.eval_front(t);
        if x < 0.0 || x > front * (1.0 + FRONT_SLACK) {
            return Err(Error::OutsidePhase {
                phase: "liquid",
                x,
                front,
            });
        }
        self.liquid_profile().value(x, t)
    }

    /// Solid temperature, defined on `x >= s(t)`.
    fn eval_solid(&self, x: f64, t: f64) -> Result<f64> {
        let front = self.eval_front(t);
        if x < front * (1.0 - FRONT_SLACK) {
            return Err(Error::OutsidePhase {
                phase: "solid",
                x,
                front,
            });
        }
        self.solid_profile().value(x, t)
    }

    /// `(k_l dPsi_l/dx, k_s dPsi_s/dx)` at `(x, t)`, each phase's closed form evaluated at x.
    fn eval_fluxes(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        let p = self.problem();
        Ok((
            p.liquid.k * self.liquid_profile().gradient(x, t)?,
            p.solid.k * self.solid_profile().gradient(x, t)?,
        ))
    }

    /// `[k_s Psi_s,x - k_l Psi_l,x - gamma s^alpha s'] / gamma s^alpha s'` at the front.
    fn stefan_residual(&self, t: f64) -> Result<f64> {
        let p = self.problem();
        let s = self.eval_front(t);
        let (liquid, solid) = self.eval_fluxes(s, t)?;
        let latent = p.gamma * s.powf(p.alpha) * self.front_velocity(t);
        Ok((solid - liquid - latent) / latent)
    }

    /// `(Psi_l(s,t), Psi_s(s,t))`, both zero for an exact solution.
    fn interface_values(&self, t: f64) -> Result<(f64, f64)> {
        let s = self.eval_front(t);
        Ok((
            self.liquid_profile().value(s, t)?,
            self.solid_profile().value(s, t)?,
        ))
    }
}

/// Exact melting solution for a convective face.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilaritySolution {
    pub nu: f64,
    pub omega: f64,
    pub e_l: f64,
    pub f_l: f64,
    pub e_s: f64,
    pub f_s: f64,
    pub problem: StefanProblem,
    pub route: Route,
}

impl SimilaritySolution {
    pub(crate) fn from_nu(problem: &StefanProblem, nu: f64, route: Route) -> Result<Self> {
        let c = coefficients_from_nu(nu, problem)?;
        Ok(Self::from_coefficients(problem, nu, c, route))
    }

    pub(crate) fn from_coefficients(
        problem: &StefanProblem,
        nu: f64,
        c: Coefficients,
        route: Route,
    ) -> Self {
        Self {
            nu,
            omega: problem.omega(),
            e_l: c.e_l,
            f_l: c.f_l,
            e_s: c.e_s,
            f_s: c.f_s,
            problem: *problem,
            route,
        }
    }

    /// Rebuilds the coefficients around a different front coefficient. Used to check that
    /// the residual diagnostics notice a wrong `nu`.
    pub fn with_nu(&self, nu: f64) -> Result<Self> {
        Self::from_nu(&self.problem, nu, self.route)
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients {
            e_l: self.e_l,
            f_l: self.f_l,
            e_s: self.e_s,
            f_s: self.f_s,
        }
    }

    /// `k_l Psi_x(0,t) - h0 t^{-1/2} [Psi_l(0,t) - T_inf t^{alpha/2}]`.
    pub fn convective_residual(&self, t: f64) -> Result<f64> {
        let p = &self.problem;
        let liquid = self.liquid_profile();
        let flux = p.liquid.k * liquid.gradient(0.0, t)?;
        let surface = liquid.value(0.0, t)?;
        Ok(flux - p.h0 / t.sqrt() * (surface - p.t_inf * t.powf(0.5 * p.alpha)))
    }
}

impl FreeBoundary for SimilaritySolution {
    fn problem(&self) -> &StefanProblem {
        &self.problem
    }

    fn front_coefficient(&self) -> f64 {
        self.nu
    }

    fn liquid_profile(&self) -> SimilarityProfile {
        SimilarityProfile {
            alpha: self.problem.alpha,
            diffusivity: self.problem.liquid.d,
            e: self.e_l,
            f: self.f_l,
        }
    }

    fn solid_profile(&self) -> SimilarityProfile {
        SimilarityProfile {
            alpha: self.problem.alpha,
            diffusivity: self.problem.solid.d,
            e: self.e_s,
            f: self.f_s,
        }
    }
}
