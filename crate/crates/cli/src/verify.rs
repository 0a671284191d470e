//! Residual checks of computed solutions against the governing equations.

use stefan_core::stefan_model::SimilarityProfile;
use stefan_core::{
    run_oracle, ConductionSolution, FreeBoundary, GridConfig, SimilaritySolution, StefanProblem,
};

use crate::error::Result;

pub const TOL_PDE: f64 = 1e-5;
pub const TOL_INTERFACE: f64 = 1e-9;
pub const TOL_STEFAN: f64 = 1e-7;
pub const TOL_CONVECTIVE: f64 = 1e-8;
pub const TOL_INITIAL: f64 = 1e-5;
pub const TOL_CONDUCTION: f64 = 1e-8;
pub const TOL_ORACLE_NU: f64 = 0.02;
pub const TOL_ORACLE_ENERGY: f64 = 5e-2;

/// Time at which the initial condition is compared.
pub const INITIAL_TIME: f64 = 1e-8;
const GRID: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Self {
            name,
            measured,
            tolerance,
        }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

/// `max |Psi_t - d Psi_xx| / max |Psi|` by central differences on a 50 x 50 grid, with the
/// x-range at each time given by `x_range`.
pub fn pde_residual(
    profile: &SimilarityProfile,
    x_range: impl Fn(f64) -> (f64, f64),
    t_range: (f64, f64),
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    let v = |x: f64, t: f64| profile.value(x, t);
    for i in 0..GRID {
        let t = t_range.0 + (t_range.1 - t_range.0) * i as f64 / (GRID - 1) as f64;
        let (lo, hi) = x_range(t);
        let hx = 1e-3 * (profile.diffusivity * t).sqrt();
        let ht = 1e-3 * t;
        for j in 0..GRID {
            let x = lo + (hi - lo) * j as f64 / (GRID - 1) as f64;
            let centre = v(x, t)?;
            let psi_t = (v(x, t + ht)? - v(x, t - ht)?) / (2.0 * ht);
            let psi_xx = (v(x + hx, t)? - 2.0 * centre + v(x - hx, t)?) / (hx * hx);
            worst = worst.max((psi_t - profile.diffusivity * psi_xx).abs());
            peak = peak.max(centre.abs());
        }
    }
    Ok(worst / peak)
}

fn face_scale(p: &StefanProblem, t: f64) -> f64 {
    p.t_inf * t.powf(0.5 * p.alpha)
}

/// All residual checks for a melting solution over the time span `times`.
pub fn two_phase_checks(sol: &SimilaritySolution, times: &[f64]) -> Result<Vec<Check>> {
    let p = sol.problem;
    let span = (times[0], times[times.len() - 1]);
    let t_range = if span.1 > span.0 {
        span
    } else {
        (0.5 * span.0, 2.0 * span.0)
    };

    let liquid = pde_residual(
        &sol.liquid_profile(),
        |t| {
            let s = sol.eval_front(t);
            (0.02 * s, 0.98 * s)
        },
        t_range,
    )?;
    let solid = pde_residual(
        &sol.solid_profile(),
        |t| {
            let s = sol.eval_front(t);
            (1.02 * s, s + 6.0 * (p.solid.d * t).sqrt())
        },
        t_range,
    )?;

    let mut interface: f64 = 0.0;
    let mut stefan: f64 = 0.0;
    let mut convective: f64 = 0.0;
    for &t in times {
        let scale = face_scale(&p, t) + p.t_i * sol.eval_front(t).powf(p.alpha);
        let (l, s) = sol.interface_values(t)?;
        interface = interface.max(l.abs().max(s.abs()) / scale);
        stefan = stefan.max(sol.stefan_residual(t)?.abs());
        let conv_scale = p.h0 / t.sqrt() * face_scale(&p, t);
        convective = convective.max(sol.convective_residual(t)?.abs() / conv_scale);
    }

    let mut initial: f64 = 0.0;
    for x in [0.5, 1.0, 2.0] {
        let expected = -p.t_i * f64::powf(x, p.alpha);
        let got = sol.eval_solid(x, INITIAL_TIME)?;
        initial = initial.max(((got - expected) / expected).abs());
    }

    Ok(vec![
        Check::new("pde_liquid", liquid, TOL_PDE),
        Check::new("pde_solid", solid, TOL_PDE),
        Check::new("interface", interface, TOL_INTERFACE),
        Check::new("stefan", stefan, TOL_STEFAN),
        Check::new("convective", convective, TOL_CONVECTIVE),
        Check::new("initial", initial, TOL_INITIAL),
    ])
}

/// Convective-face and initial-condition residuals of a sub-threshold solution.
pub fn conduction_checks(sol: &ConductionSolution, times: &[f64]) -> Result<Vec<Check>> {
    let p = sol.problem;
    let mut convective: f64 = 0.0;
    for &t in times {
        let surface = sol.profile().value(0.0, t)?;
        let scale =
            sol.eval_flux(0.0, t)?.abs() + p.h0 / t.sqrt() * (surface.abs() + face_scale(&p, t));
        convective = convective.max(sol.convective_residual(t)?.abs() / scale);
    }
    let mut initial: f64 = 0.0;
    for x in [0.5, 1.0, 2.0] {
        initial = initial.max(sol.initial_residual(x)?.abs() / (p.t_i * f64::powf(x, p.alpha)));
    }
    Ok(vec![
        Check::new("convective", convective, TOL_CONDUCTION),
        Check::new("initial", initial, TOL_CONDUCTION),
    ])
}

/// Finite-difference comparison: relative front-coefficient error and the worst discrete
/// energy-balance residual.
pub fn oracle_checks(sol: &SimilaritySolution, nx: usize, t_end: f64) -> Result<Vec<Check>> {
    let grid = GridConfig::suggested(sol, nx, t_end);
    let run = run_oracle(&sol.problem, &grid)?;
    Ok(vec![
        Check::new(
            "oracle_nu",
            ((run.nu_fit - sol.nu) / sol.nu).abs(),
            TOL_ORACLE_NU,
        ),
        Check::new("oracle_energy", run.max_stefan_residual, TOL_ORACLE_ENERGY),
    ])
}
