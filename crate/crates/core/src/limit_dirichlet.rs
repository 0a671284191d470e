//! Limit `h0 -> infinity`: the face temperature is prescribed, `Psi(0,t) = T_inf t^{alpha/2}`.

use crate::error::{Error, Result};
use crate::root_solver::{solve_monotone, MonotoneRootSpec};
use crate::specfun::kummer_m;
use crate::stefan_model::{
    coefficients_from_nu, f1, solve, FreeBoundary, SimilarityProfile, SolveOutcome, StefanProblem,
};

/// `1 / (x M(alpha/2+1, 3/2, x^2))`, decreasing from +infinity at 0+ to 0.
pub fn f3(x: f64, problem: &StefanProblem) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            function: "f3",
            reason: "x must be > 0".into(),
        });
    }
    Ok(1.0 / (x * kummer_m(0.5 * problem.alpha + 1.0, 1.5, x * x)?))
}

/// Left side of the limit front equation `LHS(x) = x^{alpha+1}`; h0 is ignored.
pub fn dirichlet_front_lhs(x: f64, problem: &StefanProblem) -> Result<f64> {
    let p = problem;
    let a = p.alpha;
    let liquid =
        p.liquid.k * p.t_inf / (2f64.powf(a + 1.0) * p.liquid.d.powf(0.5 * a + 1.0) * p.gamma);
    let solid = p.solid.k * p.t_i * p.solid.d.powf(0.5 * (a - 1.0))
        / (p.gamma * p.liquid.d.powf(0.5 * (a + 1.0)));
    Ok(liquid * f3(x, p)? - solid * f1(x, p)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolution {
    pub nu_inf: f64,
    pub omega: f64,
    pub e_l: f64,
    pub f_l: f64,
    pub e_s: f64,
    pub f_s: f64,
    pub problem: StefanProblem,
}

impl DirichletSolution {
    /// `Psi_l(0,t) - T_inf t^{alpha/2}`.
    pub fn dirichlet_residual(&self, t: f64) -> Result<f64> {
        let p = &self.problem;
        Ok(self.liquid_profile().value(0.0, t)? - p.t_inf * t.powf(0.5 * p.alpha))
    }
}

impl FreeBoundary for DirichletSolution {
    fn problem(&self) -> &StefanProblem {
        &self.problem
    }

    fn front_coefficient(&self) -> f64 {
        self.nu_inf
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

/// Solves the prescribed-temperature problem. `problem.h0` plays no role.
pub fn solve_dirichlet(problem: &StefanProblem) -> Result<DirichletSolution> {
    let p = problem.with_h0(1.0);
    p.validate()?;
    let exponent = p.alpha + 1.0;
    let failure = std::cell::RefCell::new(None);
    let residual = |x: f64| match dirichlet_front_lhs(x, &p) {
        Ok(v) => v - x.powf(exponent),
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let mut x_lo = 1.0;
    while !(residual(x_lo) > 0.0) {
        x_lo *= 0.5;
        if x_lo < 1e-300 {
            return Err(failure.into_inner().unwrap_or(Error::NoPositiveStart(x_lo)));
        }
    }
    let tol_res = 1e-10 * (1.0 + p.delta1().abs());
    let spec = MonotoneRootSpec::new(residual)
        .with_x_lo(x_lo)
        .with_tol_rel(4.0 * f64::EPSILON)
        .with_tol_res(tol_res);
    let root = solve_monotone(&spec);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let nu = root?;

    let a = p.alpha;
    let even = kummer_m(-0.5 * a, 0.5, -nu * nu)?;
    let odd = nu * kummer_m(0.5 - 0.5 * a, 1.5, -nu * nu)?;
    let solid = coefficients_from_nu(nu, &p)?;
    Ok(DirichletSolution {
        nu_inf: nu,
        omega: p.omega(),
        e_l: p.t_inf,
        f_l: -p.t_inf * even / odd,
        e_s: solid.e_s,
        f_s: solid.f_s,
        problem: *problem,
    })
}

/// One row of [`convergence_study`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub h0: f64,
    pub nu: f64,
    pub nu_inf: f64,
    pub gap: f64,
}

/// `{10, 100, ..., 1e6}` times the melting threshold.
pub fn default_ladder(problem: &StefanProblem) -> Vec<f64> {
    let thr = problem.h0_threshold();
    (1..=6).map(|k| thr * 10f64.powi(k)).collect()
}

/// Front coefficients along an increasing ladder of transfer coefficients, next to the limit.
pub fn convergence_study(problem: &StefanProblem, h0_ladder: &[f64]) -> Result<Vec<LimitRow>> {
    if h0_ladder.is_empty() {
        return Err(Error::InvalidProblem("h0 ladder is empty".into()));
    }
    if h0_ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidProblem(
            "h0 ladder must be strictly increasing".into(),
        ));
    }
    let threshold = problem.h0_threshold();
    if let Some(&h0) = h0_ladder.iter().find(|&&h| !(h > threshold)) {
        return Err(Error::BelowThreshold { h0, threshold });
    }
    let limit = solve_dirichlet(problem)?;
    h0_ladder
        .iter()
        .map(|&h0| {
            let nu = match solve(&problem.with_h0(h0))? {
                SolveOutcome::TwoPhase(sol) => sol.nu,
                SolveOutcome::ConductionOnly(_) => {
                    return Err(Error::BelowThreshold { h0, threshold })
                }
            };
            Ok(LimitRow {
                h0,
                nu,
                nu_inf: limit.nu_inf,
                gap: (nu - limit.nu_inf).abs(),
            })
        })
        .collect()
}
