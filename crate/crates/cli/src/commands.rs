use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;
use stefan_core::limit_dirichlet::default_ladder;
use stefan_core::{
    convergence_study, solve, solve_dirichlet, FreeBoundary, SimilaritySolution, SolveOutcome,
};

use crate::config::{Format, RunConfig};
use crate::emit::{cell, finite, num, raw, raw_json, to_json, Csv};
use crate::error::{CliError, Result};
use crate::verify::{conduction_checks, oracle_checks, two_phase_checks, Check};

pub const THREADS_ENV: &str = "STEFAN_EXACT_THREADS";

/// What a command produced: the document to write, human-readable summary lines for
/// stderr, and the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub summary: Vec<String>,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(body: String, summary: Vec<String>) -> Self {
        Self {
            body,
            summary,
            exit_code: 0,
        }
    }
}

#[derive(Serialize)]
struct ProfileRow {
    t: Box<RawValue>,
    x: Box<RawValue>,
    phase: &'static str,
    psi: Box<RawValue>,
    front: Box<RawValue>,
}

#[derive(Serialize)]
struct SolveDoc {
    config: Box<RawValue>,
    branch: &'static str,
    threshold: Box<RawValue>,
    nu: Box<RawValue>,
    omega: Box<RawValue>,
    coefficients: CoefficientsDoc,
    profiles: Vec<ProfileRow>,
}

#[derive(Serialize)]
struct CoefficientsDoc {
    e_l: Box<RawValue>,
    f_l: Box<RawValue>,
    e_s: Box<RawValue>,
    f_s: Box<RawValue>,
}

struct Sample {
    t: f64,
    x: f64,
    phase: &'static str,
    psi: f64,
    front: f64,
}

fn branch_name(outcome: &SolveOutcome) -> &'static str {
    if outcome.is_two_phase() {
        "two-phase"
    } else {
        "conduction-only"
    }
}

fn samples(cfg: &RunConfig, outcome: &SolveOutcome) -> Result<Vec<Sample>> {
    let ts = &cfg.sampling.t;
    let t_end = cfg.sampling.t_end();
    let mut rows = Vec::new();
    match outcome {
        SolveOutcome::TwoPhase(sol) => {
            let xs = cfg.sampling.x.resolve(4.0 * sol.eval_front(t_end));
            for &t in ts {
                let s = finite(sol.eval_front(t), "front position")?;
                for &x in &xs {
                    let (phase, psi) = if x <= s {
                        ("liquid", sol.eval_liquid(x, t)?)
                    } else {
                        ("solid", sol.eval_solid(x, t)?)
                    };
                    rows.push(Sample {
                        t,
                        x,
                        phase,
                        psi: finite(psi, "temperature")?,
                        front: s,
                    });
                }
            }
        }
        SolveOutcome::ConductionOnly(c) => {
            let depth = 2.0 * (cfg.problem.solid.d * t_end).sqrt();
            let xs = cfg.sampling.x.resolve(4.0 * depth);
            for &t in ts {
                for &x in &xs {
                    rows.push(Sample {
                        t,
                        x,
                        phase: "solid",
                        psi: finite(c.eval_solid(x, t)?, "temperature")?,
                        front: 0.0,
                    });
                }
            }
        }
    }
    Ok(rows)
}

fn solve_summary(cfg: &RunConfig, outcome: &SolveOutcome) -> Vec<String> {
    let threshold = cfg.problem.h0_threshold();
    let route = match cfg.integer_route {
        Some(n) => format!("integer-alpha (n = {n})"),
        None => "kummer".to_string(),
    };
    match outcome {
        SolveOutcome::TwoPhase(sol) => vec![
            format!(
                "branch: two-phase (h0 = {} > threshold {})",
                num(cfg.problem.h0),
                num(threshold)
            ),
            format!("route: {route}"),
            format!("nu = {}", num(sol.nu)),
        ],
        SolveOutcome::ConductionOnly(c) => vec![
            format!(
                "branch: conduction-only (h0 = {} <= threshold {}), no melting",
                num(cfg.problem.h0),
                num(threshold)
            ),
            format!("E_s = {}, F_s = {}", num(c.e_s), num(c.f_s)),
        ],
    }
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<Outcome> {
    let outcome = solve(&cfg.problem)?;
    let rows = samples(cfg, &outcome)?;
    let summary = solve_summary(cfg, &outcome);
    let body = match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&["t", "x", "phase", "psi", "front"]);
            for r in &rows {
                csv.row(&[
                    num(r.t),
                    num(r.x),
                    r.phase.to_string(),
                    num(r.psi),
                    num(r.front),
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let (nu, omega, coefficients) = match &outcome {
                SolveOutcome::TwoPhase(sol) => {
                    (Some(sol.nu), Some(sol.omega), coefficients_doc(sol))
                }
                SolveOutcome::ConductionOnly(c) => (
                    None,
                    None,
                    CoefficientsDoc {
                        e_l: raw(None),
                        f_l: raw(None),
                        e_s: raw(Some(c.e_s)),
                        f_s: raw(Some(c.f_s)),
                    },
                ),
            };
            to_json(&SolveDoc {
                config: raw_json(cfg.echo()),
                branch: branch_name(&outcome),
                threshold: raw(Some(cfg.problem.h0_threshold())),
                nu: raw(nu),
                omega: raw(omega),
                coefficients,
                profiles: rows
                    .iter()
                    .map(|r| ProfileRow {
                        t: raw(Some(r.t)),
                        x: raw(Some(r.x)),
                        phase: r.phase,
                        psi: raw(Some(r.psi)),
                        front: raw(Some(r.front)),
                    })
                    .collect(),
            })
        }
    };
    Ok(Outcome::ok(body, summary))
}

fn coefficients_doc(sol: &SimilaritySolution) -> CoefficientsDoc {
    CoefficientsDoc {
        e_l: raw(Some(sol.e_l)),
        f_l: raw(Some(sol.f_l)),
        e_s: raw(Some(sol.e_s)),
        f_s: raw(Some(sol.f_s)),
    }
}

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    measured: Box<RawValue>,
    tolerance: Box<RawValue>,
    status: &'static str,
}

#[derive(Serialize)]
struct VerifyDoc {
    config: Box<RawValue>,
    branch: &'static str,
    nu: Box<RawValue>,
    passed: bool,
    checks: Vec<CheckRow>,
    notices: Vec<String>,
}

fn status(c: &Check) -> &'static str {
    if c.passed() {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let outcome = solve(&cfg.problem)?;
    let mut notices = Vec::new();
    let (checks, nu) = match &outcome {
        SolveOutcome::TwoPhase(sol) => {
            let sol = if cfg.verify.nu_perturbation != 0.0 {
                notices.push(format!(
                    "nu perturbed by {} before checking",
                    num(cfg.verify.nu_perturbation)
                ));
                sol.with_nu(sol.nu + cfg.verify.nu_perturbation)?
            } else {
                sol.clone()
            };
            let mut checks = two_phase_checks(&sol, &cfg.sampling.t)?;
            checks.extend(oracle_checks(&sol, cfg.verify.nx, cfg.verify.t_end)?);
            (checks, Some(sol.nu))
        }
        SolveOutcome::ConductionOnly(c) => {
            notices.push(format!(
                "oracle comparison skipped: h0 = {} is at or below the melting threshold {}",
                num(cfg.problem.h0),
                num(cfg.problem.h0_threshold())
            ));
            (conduction_checks(c, &cfg.sampling.t)?, None)
        }
    };
    let passed = checks.iter().all(Check::passed);

    let mut summary = vec![format!("branch: {}", branch_name(&outcome))];
    for c in &checks {
        summary.push(format!(
            "{:<14} {} (tol {}) {}",
            c.name,
            num(c.measured),
            num(c.tolerance),
            status(c)
        ));
    }
    summary.extend(notices.iter().map(|n| format!("notice: {n}")));
    summary.push(if passed {
        "all checks passed".into()
    } else {
        "verification FAILED".into()
    });

    let body = match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&["check", "measured", "tolerance", "status"]);
            for c in &checks {
                csv.row(&[
                    c.name.to_string(),
                    num(c.measured),
                    num(c.tolerance),
                    status(c).into(),
                ]);
            }
            csv.finish()
        }
        Format::Json => to_json(&VerifyDoc {
            config: raw_json(cfg.echo()),
            branch: branch_name(&outcome),
            nu: raw(nu),
            passed,
            checks: checks
                .iter()
                .map(|c| CheckRow {
                    check: c.name,
                    measured: raw(Some(c.measured)),
                    tolerance: raw(Some(c.tolerance)),
                    status: status(c),
                })
                .collect(),
            notices,
        }),
    };
    Ok(Outcome {
        body,
        summary,
        exit_code: if passed { 0 } else { 1 },
    })
}

/// Worker count from `STEFAN_EXACT_THREADS`; `None` means the machine default.
pub fn thread_cap(value: Option<&str>) -> Result<Option<usize>> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Validation(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

#[derive(Serialize)]
struct SweepRowDoc {
    value: Box<RawValue>,
    branch: &'static str,
    threshold: Box<RawValue>,
    nu: Box<RawValue>,
    e_l: Box<RawValue>,
    f_l: Box<RawValue>,
    e_s: Box<RawValue>,
    f_s: Box<RawValue>,
}

#[derive(Serialize)]
struct SweepDoc {
    config: Box<RawValue>,
    parameter: &'static str,
    rows: Vec<SweepRowDoc>,
}

struct SweepPoint {
    value: f64,
    branch: &'static str,
    threshold: f64,
    nu: Option<f64>,
    coefficients: [Option<f64>; 4],
}

pub fn cmd_sweep(cfg: &RunConfig, threads: Option<usize>) -> Result<Outcome> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("sweep requires a \"sweep\" section".into()))?;
    let point = |&value: &f64| -> Result<SweepPoint> {
        let problem = sweep.parameter.apply(&cfg.problem, value);
        let outcome = solve(&problem)?;
        let (nu, coefficients) = match &outcome {
            SolveOutcome::TwoPhase(s) => (
                Some(s.nu),
                [Some(s.e_l), Some(s.f_l), Some(s.e_s), Some(s.f_s)],
            ),
            SolveOutcome::ConductionOnly(c) => (None, [None, None, Some(c.e_s), Some(c.f_s)]),
        };
        Ok(SweepPoint {
            value,
            branch: branch_name(&outcome),
            threshold: problem.h0_threshold(),
            nu,
            coefficients,
        })
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Validation(format!("cannot start worker pool: {e}")))?;
    // collect keeps input order whatever the scheduling
    let points: Vec<SweepPoint> =
        pool.install(|| sweep.values.par_iter().map(point).collect::<Result<_>>())?;

    let melting = points.iter().filter(|p| p.nu.is_some()).count();
    let summary = vec![format!(
        "swept {} over {} values: {} two-phase, {} conduction-only",
        sweep.parameter.name(),
        points.len(),
        melting,
        points.len() - melting
    )];
    let body = match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "parameter",
                "value",
                "branch",
                "threshold",
                "nu",
                "e_l",
                "f_l",
                "e_s",
                "f_s",
            ]);
            for p in &points {
                let mut cells = vec![
                    sweep.parameter.name().to_string(),
                    num(p.value),
                    p.branch.to_string(),
                    num(p.threshold),
                    cell(p.nu),
                ];
                cells.extend(p.coefficients.iter().map(|c| cell(*c)));
                csv.row(&cells);
            }
            csv.finish()
        }
        Format::Json => to_json(&SweepDoc {
            config: raw_json(cfg.echo()),
            parameter: sweep.parameter.name(),
            rows: points
                .iter()
                .map(|p| SweepRowDoc {
                    value: raw(Some(p.value)),
                    branch: p.branch,
                    threshold: raw(Some(p.threshold)),
                    nu: raw(p.nu),
                    e_l: raw(p.coefficients[0]),
                    f_l: raw(p.coefficients[1]),
                    e_s: raw(p.coefficients[2]),
                    f_s: raw(p.coefficients[3]),
                })
                .collect(),
        }),
    };
    Ok(Outcome::ok(body, summary))
}

#[derive(Serialize)]
struct LimitRowDoc {
    h0: Box<RawValue>,
    nu: Box<RawValue>,
    nu_inf: Box<RawValue>,
    gap: Box<RawValue>,
}

#[derive(Serialize)]
struct LimitDoc {
    config: Box<RawValue>,
    threshold: Box<RawValue>,
    nu_inf: Box<RawValue>,
    rows: Vec<LimitRowDoc>,
}

pub fn cmd_limit(cfg: &RunConfig) -> Result<Outcome> {
    let problem = &cfg.problem;
    let threshold = problem.h0_threshold();
    let ladder = match &cfg.ladder {
        Some(l) => l.clone(),
        None => default_ladder(problem),
    };
    if let Some(&h0) = ladder.iter().find(|&&h0| h0 <= threshold) {
        return Err(CliError::Validation(format!(
            "limit.ladder entry {} is at or below the melting threshold {}",
            num(h0),
            num(threshold)
        )));
    }
    let rows = convergence_study(problem, &ladder)?;
    let nu_inf = solve_dirichlet(problem)?.nu_inf;

    let mut summary = vec![format!("nu_inf = {}", num(nu_inf))];
    summary.push(format!("{:>24} {:>24} {:>24}", "h0", "nu", "gap"));
    summary.extend(
        rows.iter()
            .map(|r| format!("{:>24} {:>24} {:>24}", num(r.h0), num(r.nu), num(r.gap))),
    );
    let body = match cfg.output.format {
        Format::Csv => {
            let mut csv = Csv::new(&["h0", "nu", "nu_inf", "gap"]);
            for r in &rows {
                csv.row(&[num(r.h0), num(r.nu), num(r.nu_inf), num(r.gap)]);
            }
            csv.finish()
        }
        Format::Json => to_json(&LimitDoc {
            config: raw_json(cfg.echo()),
            threshold: raw(Some(threshold)),
            nu_inf: raw(Some(nu_inf)),
            rows: rows
                .iter()
                .map(|r| LimitRowDoc {
                    h0: raw(Some(r.h0)),
                    nu: raw(Some(r.nu)),
                    nu_inf: raw(Some(r.nu_inf)),
                    gap: raw(Some(r.gap)),
                })
                .collect(),
        }),
    };
    Ok(Outcome::ok(body, summary))
}
