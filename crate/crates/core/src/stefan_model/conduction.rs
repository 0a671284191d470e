use super::{SimilarityProfile, StefanProblem};
use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Sub-threshold outcome: no melting, the solid conducts heat with the convective condition
/// applied directly to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductionSolution {
    pub e_s: f64,
    pub f_s: f64,
    pub problem: StefanProblem,
}

impl ConductionSolution {
    pub fn new(problem: &StefanProblem) -> Result<Self> {
        let p = problem;
        let a = p.alpha;
        let sqrt_ds = p.solid.d.sqrt();
        let g_half = gamma(0.5 * (a + 1.0))?;
        let numer = -p.t_i * p.solid.d.powf(0.5 * a) * p.solid.k * gamma(a + 1.0)?
            + g_half * p.h0 * sqrt_ds * p.t_inf;
        let denom = p.solid.k * gamma(0.5 * a + 1.0)? + p.h0 * sqrt_ds * g_half;
        if !(denom > 0.0) {
            return Err(Error::DivisionGuard {
                what: "k_s Gamma(alpha/2+1) + h0 sqrt(d_s) Gamma((alpha+1)/2)",
                value: denom,
            });
        }
        let e_s = numer / denom;
        let f_s = 2.0 * sqrt_ds * p.h0 * (e_s - p.t_inf) / p.solid.k;
        Ok(Self {
            e_s,
            f_s,
            problem: *problem,
        })
    }

    pub fn profile(&self) -> SimilarityProfile {
        SimilarityProfile {
            alpha: self.problem.alpha,
            diffusivity: self.problem.solid.d,
            e: self.e_s,
            f: self.f_s,
        }
    }

    pub fn eval_solid(&self, x: f64, t: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(Error::OutsidePhase {
                phase: "solid",
                x,
                front: 0.0,
            });
        }
        self.profile().value(x, t)
    }

    /// `k_s dPsi_s/dx`.
    pub fn eval_flux(&self, x: f64, t: f64) -> Result<f64> {
        Ok(self.problem.solid.k * self.profile().gradient(x, t)?)
    }

    /// `k_s Psi_x(0,t) - h0 t^{-1/2} [Psi(0,t) - T_inf t^{alpha/2}]`.
    pub fn convective_residual(&self, t: f64) -> Result<f64> {
        let p = &self.problem;
        let surface = self.profile().value(0.0, t)?;
        Ok(self.eval_flux(0.0, t)? - p.h0 / t.sqrt() * (surface - p.t_inf * t.powf(0.5 * p.alpha)))
    }

    /// `lim_{t->0} Psi(x,t) + T_i x^alpha`, from the large-argument limits of both profile terms.
    pub fn initial_residual(&self, x: f64) -> Result<f64> {
        let p = &self.problem;
        let a = p.alpha;
        let scale = x.powf(a) / (4.0 * p.solid.d).powf(0.5 * a) * std::f64::consts::PI.sqrt();
        let limit =
            scale * (self.e_s / gamma(0.5 * a + 0.5)? + self.f_s / (2.0 * gamma(0.5 * a + 1.0)?));
        Ok(limit + p.t_i * x.powf(a))
    }
}
