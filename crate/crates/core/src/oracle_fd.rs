//! Explicit finite-difference solver for the melting problem, used to cross-check the
//! closed-form solutions.
//!
//! Each phase is mapped to a fixed unit interval that follows the front: the liquid
//! `[0, s(t)]` through `xi = x / s` and the solid `[s(t), x_max]` through
//! `zeta = (x - s) / (x_max - s)`. The heat equations pick up advection terms from the moving
//! coordinates, the front sits on a node at all times and moves by explicit Euler steps of
//! the Stefan balance with one-sided second-order gradients. A ghost node carries the
//! convective condition at x = 0 and the far end holds the initial temperature.
//!
//! The march starts at `t_start > 0` from the closed-form profiles since the convective
//! condition is singular at t = 0.

use crate::error::{Error, Result};
use crate::stefan_model::{solve, FreeBoundary, SimilaritySolution, SolveOutcome, StefanProblem};

/// Number of evenly spaced front samples over `[t_start, t_end]`.
const FRONT_SAMPLES: usize = 101;
/// Every this many front samples a full temperature snapshot is stored.
const SNAPSHOT_EVERY: usize = 25;
const MIN_LIQUID_INTERVALS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub x_max: f64,
    /// Total number of spatial nodes across both phases.
    pub nx: usize,
    pub t_end: f64,
    /// Diffusion number bound, `d dt / dx^2` per phase.
    pub cfl: f64,
    pub t_start: f64,
}

impl GridConfig {
    /// A grid wide enough that the front stays well inside and the solid's far field is
    /// undisturbed until `t_end`.
    pub fn suggested(solution: &SimilaritySolution, nx: usize, t_end: f64) -> Self {
        let s_end = solution.eval_front(t_end);
        let layer = 8.0 * (solution.problem.solid.d * t_end).sqrt();
        Self {
            x_max: (1.5 * s_end).max(s_end + layer),
            nx,
            t_end,
            cfl: 0.4,
            t_start: 0.01 * t_end,
        }
    }

    pub fn with_nx(mut self, nx: usize) -> Self {
        self.nx = nx;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 200 {
            return Err(Error::Grid(format!("nx must be >= 200, got {}", self.nx)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.4) {
            return Err(Error::Grid(format!(
                "cfl must be in (0, 0.4], got {}",
                self.cfl
            )));
        }
        if !(self.t_start > 0.0 && self.t_end > self.t_start) {
            return Err(Error::Grid(format!(
                "need 0 < t_start < t_end, got {} and {}",
                self.t_start, self.t_end
            )));
        }
        if !(self.x_max > 0.0 && self.x_max.is_finite()) {
            return Err(Error::Grid("x_max must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TempSample {
    pub x: f64,
    pub t: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub grid: GridConfig,
    /// `(t, s)` pairs, increasing in t.
    pub front_trajectory: Vec<(f64, f64)>,
    pub temp_snapshots: Vec<TempSample>,
    /// Least-squares fit of `s(t) = 2 nu sqrt(d_l t)` to the trajectory.
    pub nu_fit: f64,
    /// Largest relative mismatch between the latent-heat rate used for a step and the flux
    /// jump recomputed after it.
    pub max_stefan_residual: f64,
    pub temp_min: f64,
    pub temp_max: f64,
    pub steps: usize,
}

struct State {
    t: f64,
    s: f64,
    liquid: Vec<f64>,
    solid: Vec<f64>,
    dxi: f64,
    dzeta: f64,
}

impl State {
    fn liquid_gradient(&self) -> f64 {
        let n = self.liquid.len() - 1;
        (3.0 * self.liquid[n] - 4.0 * self.liquid[n - 1] + self.liquid[n - 2])
            / (2.0 * self.dxi * self.s)
    }

    fn solid_gradient(&self, x_max: f64) -> f64 {
        (-3.0 * self.solid[0] + 4.0 * self.solid[1] - self.solid[2])
            / (2.0 * self.dzeta * (x_max - self.s))
    }

    fn flux_jump(&self, p: &StefanProblem, x_max: f64) -> f64 {
        p.solid.k * self.solid_gradient(x_max) - p.liquid.k * self.liquid_gradient()
    }

    fn snapshot(&self, x_max: f64, out: &mut Vec<TempSample>) {
        for (i, &psi) in self.liquid.iter().enumerate() {
            out.push(TempSample {
                x: i as f64 * self.dxi * self.s,
                t: self.t,
                psi,
            });
        }
        for (j, &psi) in self.solid.iter().enumerate().skip(1) {
            out.push(TempSample {
                x: self.s + j as f64 * self.dzeta * (x_max - self.s),
                t: self.t,
                psi,
            });
        }
    }
}

/// Marches the problem from the closed-form state at `grid.t_start` to `grid.t_end`.
pub fn run_oracle(problem: &StefanProblem, grid: &GridConfig) -> Result<OracleRun> {
    grid.validate()?;
    let exact = match solve(problem)? {
        SolveOutcome::TwoPhase(sol) => sol,
        SolveOutcome::ConductionOnly(_) => {
            return Err(Error::BelowThreshold {
                h0: problem.h0,
                threshold: problem.h0_threshold(),
            })
        }
    };
    let p = *problem;
    let x_max = grid.x_max;
    let intervals = grid.nx - 1;
    let s0 = exact.eval_front(grid.t_start);
    // equal spacing in both phases at t_end, assuming the front keeps its sqrt(t) growth
    let s_end = s0 * (grid.t_end / grid.t_start).sqrt();
    let share = (s_end / x_max).clamp(0.0, 0.5);
    let nl = ((intervals as f64 * share).round() as usize).max(MIN_LIQUID_INTERVALS);
    let ns = intervals - nl;

    if s0 > 0.8 * x_max {
        return Err(Error::FrontExit {
            front: s0,
            t: grid.t_start,
        });
    }
    let dxi = 1.0 / nl as f64;
    let dzeta = 1.0 / ns as f64;
    let liquid_profile = exact.liquid_profile();
    let solid_profile = exact.solid_profile();
    let mut liquid = (0..=nl)
        .map(|i| liquid_profile.value(i as f64 * dxi * s0, grid.t_start))
        .collect::<Result<Vec<_>>>()?;
    let mut solid = (0..=ns)
        .map(|j| solid_profile.value(s0 + j as f64 * dzeta * (x_max - s0), grid.t_start))
        .collect::<Result<Vec<_>>>()?;
    liquid[nl] = 0.0;
    solid[0] = 0.0;
    solid[ns] = -p.t_i * x_max.powf(p.alpha);

    let mut state = State {
        t: grid.t_start,
        s: s0,
        liquid,
        solid,
        dxi,
        dzeta,
    };
    let lower = -p.t_i * x_max.powf(p.alpha) * 1.01;
    let upper = p.t_inf * grid.t_end.powf(0.5 * p.alpha) * 1.01;
    let span = upper - lower;

    let sample_times: Vec<f64> = (0..FRONT_SAMPLES)
        .map(|k| grid.t_start + (grid.t_end - grid.t_start) * k as f64 / (FRONT_SAMPLES - 1) as f64)
        .collect();
    let mut front_trajectory = vec![(state.t, state.s)];
    let mut temp_snapshots = Vec::new();
    state.snapshot(x_max, &mut temp_snapshots);

    let mut new_liquid = state.liquid.clone();
    let mut new_solid = state.solid.clone();
    let mut max_stefan_residual: f64 = 0.0;
    let mut temp_min = f64::INFINITY;
    let mut temp_max = f64::NEG_INFINITY;
    let mut steps = 0usize;
    let mut jump = state.flux_jump(&p, x_max);

    for (k, &target) in sample_times.iter().enumerate().skip(1) {
        while state.t < target {
            let (t, s) = (state.t, state.s);
            let sqrt_t = t.sqrt();
            let velocity = jump / (p.gamma * s.powf(p.alpha));
            let hl = s * dxi;
            let hs = (x_max - s) * dzeta;
            let biot = hl * p.h0 / (p.liquid.k * sqrt_t);
            let dt_liquid = grid.cfl * hl * hl / (p.liquid.d * (1.0 + biot));
            let dt_solid = grid.cfl * hs * hs / p.solid.d;
            let dt_front = if velocity > 0.0 {
                0.5 * hl / velocity
            } else {
                f64::INFINITY
            };
            let dt = dt_liquid.min(dt_solid).min(dt_front).min(target - t);

            // liquid, xi in [0, 1]
            let rl = dt * p.liquid.d / (hl * hl);
            let adv_l = 0.5 * dt * velocity / s;
            let l = &state.liquid;
            let g = hl * p.h0 / (p.liquid.k * sqrt_t) * (l[0] - p.t_inf * t.powf(0.5 * p.alpha));
            new_liquid[0] = l[0] + rl * (2.0 * l[1] - 2.0 * l[0] - 2.0 * g);
            let (mut lo, mut hi) = (new_liquid[0].min(0.0), new_liquid[0].max(0.0));
            for (i, (w, out)) in l.windows(3).zip(&mut new_liquid[1..nl]).enumerate() {
                let xi_adv = adv_l * (i + 1) as f64;
                let v = w[1] + rl * (w[2] - 2.0 * w[1] + w[0]) + xi_adv * (w[2] - w[0]);
                lo = lo.min(v);
                hi = hi.max(v);
                *out = v;
            }
            new_liquid[nl] = 0.0;

            // solid, zeta in [0, 1]
            let rs = dt * p.solid.d / (hs * hs);
            let adv_s = dt * velocity / (2.0 * dzeta * (x_max - s));
            let q = &state.solid;
            new_solid[0] = 0.0;
            for (j, (w, out)) in q.windows(3).zip(&mut new_solid[1..ns]).enumerate() {
                let zeta_adv = adv_s * (1.0 - (j + 1) as f64 * dzeta);
                let v = w[1] + rs * (w[2] - 2.0 * w[1] + w[0]) + zeta_adv * (w[2] - w[0]);
                lo = lo.min(v);
                hi = hi.max(v);
                *out = v;
            }
            new_solid[ns] = q[ns];
            lo = lo.min(q[ns]);
            hi = hi.max(q[ns]);

            std::mem::swap(&mut state.liquid, &mut new_liquid);
            std::mem::swap(&mut state.solid, &mut new_solid);
            state.s = s + dt * velocity;
            state.t = if target - t <= dt { target } else { t + dt };
            steps += 1;

            if !state.s.is_finite() || state.s <= 0.0 || lo < lower - span || hi > upper + span {
                return Err(Error::Unstable { t: state.t });
            }
            if state.s > 0.8 * x_max {
                return Err(Error::FrontExit {
                    front: state.s,
                    t: state.t,
                });
            }
            temp_min = temp_min.min(lo);
            temp_max = temp_max.max(hi);
            jump = state.flux_jump(&p, x_max);
            if !jump.is_finite() {
                return Err(Error::Unstable { t: state.t });
            }
            let latent = p.gamma * state.s.powf(p.alpha) * velocity;
            max_stefan_residual = max_stefan_residual.max(((latent - jump) / jump).abs());
        }
        front_trajectory.push((state.t, state.s));
        if k % SNAPSHOT_EVERY == 0 {
            state.snapshot(x_max, &mut temp_snapshots);
        }
    }

    let d = p.liquid.d;
    let (num, den) = front_trajectory
        .iter()
        .fold((0.0, 0.0), |(num, den), &(t, s)| {
            (num + s * 2.0 * (d * t).sqrt(), den + 4.0 * d * t)
        });
    Ok(OracleRun {
        grid: *grid,
        front_trajectory,
        temp_snapshots,
        nu_fit: num / den,
        max_stefan_residual,
        temp_min,
        temp_max,
        steps,
    })
}
