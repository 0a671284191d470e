//! JSON run configuration.
//!
//! ```json
//! {
//!   "problem": {"alpha": 0.5, "gamma": 1, "t_i": 1, "t_inf": 1, "h0": 5,
//!               "liquid": {"k": 1, "d": 1}, "solid": {"k": 1, "d": 1}},
//!   "sampling": {"x_points": 101, "t": [0.1, 1, 10]},
//!   "output": {"path": "out.csv", "format": "csv"}
//! }
//! ```

use std::path::PathBuf;

use serde::Deserialize;
use stefan_core::{PhaseProps, StefanProblem};

use crate::emit::num;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Solve,
    Verify,
    Sweep,
    Limit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Alpha,
    Gamma,
    TI,
    TInf,
    H0,
    LiquidK,
    LiquidD,
    SolidK,
    SolidD,
}

const PARAMETER_NAMES: [(&str, Parameter); 9] = [
    ("alpha", Parameter::Alpha),
    ("gamma", Parameter::Gamma),
    ("t_i", Parameter::TI),
    ("t_inf", Parameter::TInf),
    ("h0", Parameter::H0),
    ("liquid.k", Parameter::LiquidK),
    ("liquid.d", Parameter::LiquidD),
    ("solid.k", Parameter::SolidK),
    ("solid.d", Parameter::SolidD),
];

impl Parameter {
    pub fn name(self) -> &'static str {
        PARAMETER_NAMES
            .iter()
            .find(|(_, p)| *p == self)
            .map(|(n, _)| *n)
            .expect("every parameter is named")
    }

    pub fn apply(self, problem: &StefanProblem, value: f64) -> StefanProblem {
        let mut p = *problem;
        match self {
            Parameter::Alpha => p.alpha = value,
            Parameter::Gamma => p.gamma = value,
            Parameter::TI => p.t_i = value,
            Parameter::TInf => p.t_inf = value,
            Parameter::H0 => p.h0 = value,
            Parameter::LiquidK => p.liquid.k = value,
            Parameter::LiquidD => p.liquid.d = value,
            Parameter::SolidK => p.solid.k = value,
            Parameter::SolidD => p.solid.d = value,
        }
        p
    }
}

/// Spatial sampling: explicit points, or `points` evenly spaced over `[0, x_max]` with a
/// solution-dependent default for `x_max`.
#[derive(Debug, Clone, PartialEq)]
pub enum XGrid {
    Explicit(Vec<f64>),
    Uniform { points: usize, x_max: Option<f64> },
}

impl XGrid {
    pub fn resolve(&self, default_x_max: f64) -> Vec<f64> {
        match self {
            XGrid::Explicit(xs) => xs.clone(),
            XGrid::Uniform { points, x_max } => {
                let x_max = x_max.unwrap_or(default_x_max);
                let last = (*points - 1) as f64;
                (0..*points).map(|i| x_max * i as f64 / last).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub x: XGrid,
    pub t: Vec<f64>,
}

impl Sampling {
    pub fn t_end(&self) -> f64 {
        *self.t.last().expect("validated non-empty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: Parameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifySettings {
    pub nx: usize,
    pub t_end: f64,
    /// Added to the computed front coefficient before checking; exercises the failure path.
    pub nu_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub problem: StefanProblem,
    /// `Some(n)` when alpha is integral and the closed-form repeated-erfc route is used.
    pub integer_route: Option<u32>,
    pub sampling: Sampling,
    pub sweep: Option<Sweep>,
    pub ladder: Option<Vec<f64>>,
    pub verify: VerifySettings,
    pub output: OutputSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: Option<Command>,
    problem: RawProblem,
    sampling: Option<RawSampling>,
    sweep: Option<RawSweep>,
    limit: Option<RawLimit>,
    verify: Option<RawVerify>,
    output: Option<RawOutput>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    alpha: f64,
    gamma: f64,
    t_i: f64,
    t_inf: f64,
    h0: f64,
    liquid: RawPhase,
    solid: RawPhase,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    k: f64,
    d: f64,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    x: Option<Vec<f64>>,
    x_points: Option<usize>,
    x_max: Option<f64>,
    t: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLimit {
    ladder: Option<Vec<f64>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    nx: Option<usize>,
    t_end: Option<f64>,
    nu_perturbation: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<PathBuf>,
    format: Option<Format>,
}

pub const DEFAULT_X_POINTS: usize = 101;
pub const DEFAULT_TIMES: [f64; 3] = [0.1, 1.0, 10.0];
pub const DEFAULT_ORACLE_NX: usize = 800;

fn increasing(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(CliError::Validation(format!("{name} must not be empty")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Validation(format!("{name} must be finite")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Validation(format!(
            "{name} must be strictly increasing"
        )));
    }
    Ok(())
}

/// Parses and validates a configuration document. The command defaults to `solve` when the
/// document does not name one.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let rp = raw.problem;
    let problem = StefanProblem {
        alpha: rp.alpha,
        gamma: rp.gamma,
        t_i: rp.t_i,
        t_inf: rp.t_inf,
        h0: rp.h0,
        liquid: PhaseProps::new(rp.liquid.k, rp.liquid.d),
        solid: PhaseProps::new(rp.solid.k, rp.solid.d),
    };
    problem.validate()?;

    let rs = raw.sampling.unwrap_or_default();
    let t = rs.t.unwrap_or_else(|| DEFAULT_TIMES.to_vec());
    increasing("sampling.t", &t)?;
    if t[0] <= 0.0 {
        return Err(CliError::Validation("sampling.t must be > 0".into()));
    }
    let x = match (rs.x, rs.x_points, rs.x_max) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(CliError::Validation(
                "sampling.x cannot be combined with sampling.x_points or sampling.x_max".into(),
            ))
        }
        (Some(xs), None, None) => {
            increasing("sampling.x", &xs)?;
            if xs[0] < 0.0 {
                return Err(CliError::Validation("sampling.x must be >= 0".into()));
            }
            XGrid::Explicit(xs)
        }
        (None, points, x_max) => {
            let points = points.unwrap_or(DEFAULT_X_POINTS);
            if points < 2 {
                return Err(CliError::Validation(
                    "sampling.x_points must be >= 2".into(),
                ));
            }
            if let Some(m) = x_max {
                if !(m > 0.0 && m.is_finite()) {
                    return Err(CliError::Validation("sampling.x_max must be > 0".into()));
                }
            }
            XGrid::Uniform { points, x_max }
        }
    };

    let sweep = raw
        .sweep
        .map(|s| {
            let parameter = PARAMETER_NAMES
                .iter()
                .find(|(n, _)| *n == s.parameter)
                .map(|(_, p)| *p)
                .ok_or_else(|| {
                    let names: Vec<&str> = PARAMETER_NAMES.iter().map(|(n, _)| *n).collect();
                    CliError::Validation(format!(
                        "sweep.parameter must be one of {}, got {:?}",
                        names.join(", "),
                        s.parameter
                    ))
                })?;
            if s.values.is_empty() {
                return Err(CliError::Validation(
                    "sweep.values must not be empty".into(),
                ));
            }
            for &v in &s.values {
                parameter
                    .apply(&problem, v)
                    .validate()
                    .map_err(|e| CliError::Validation(format!("sweep value {v}: {e}")))?;
            }
            Ok(Sweep {
                parameter,
                values: s.values,
            })
        })
        .transpose()?;

    let ladder = raw.limit.and_then(|l| l.ladder);
    if let Some(l) = &ladder {
        increasing("limit.ladder", l)?;
    }

    let rv = raw.verify.unwrap_or_default();
    let verify = VerifySettings {
        nx: rv.nx.unwrap_or(DEFAULT_ORACLE_NX),
        t_end: rv.t_end.unwrap_or(1.0),
        nu_perturbation: rv.nu_perturbation.unwrap_or(0.0),
    };
    if verify.nx < 200 {
        return Err(CliError::Validation("verify.nx must be >= 200".into()));
    }
    if !(verify.t_end > 0.0 && verify.t_end.is_finite()) {
        return Err(CliError::Validation("verify.t_end must be > 0".into()));
    }
    if !verify.nu_perturbation.is_finite() {
        return Err(CliError::Validation(
            "verify.nu_perturbation must be finite".into(),
        ));
    }

    let ro = raw.output.unwrap_or_default();
    Ok(RunConfig {
        command: raw.command.unwrap_or(Command::Solve),
        integer_route: problem.integer_alpha(),
        problem,
        sampling: Sampling { x, t },
        sweep,
        ladder,
        verify,
        output: OutputSpec {
            path: ro.path,
            format: ro.format.unwrap_or(Format::Csv),
        },
    })
}

impl RunConfig {
    /// Binds the configuration to the command given on the command line.
    pub fn for_command(mut self, command: Command, named_in_doc: bool) -> Result<Self> {
        if named_in_doc && self.command != command {
            return Err(CliError::Validation(format!(
                "config names command {:?} but {:?} was requested",
                self.command.name(),
                command.name()
            )));
        }
        if command == Command::Sweep && self.sweep.is_none() {
            return Err(CliError::Validation(
                "sweep requires a \"sweep\" section".into(),
            ));
        }
        self.command = command;
        Ok(self)
    }

    /// Resolved configuration as a JSON object, for echoing into outputs.
    pub fn echo(&self) -> String {
        let p = &self.problem;
        let route = match self.integer_route {
            Some(n) => format!("\"integer-alpha\",\"integer_order\":{n}"),
            None => "\"kummer\"".to_string(),
        };
        format!(
            "{{\"command\":\"{}\",\"problem\":{{\"alpha\":{},\"gamma\":{},\"t_i\":{},\"t_inf\":{},\
             \"h0\":{},\"liquid\":{{\"k\":{},\"d\":{}}},\"solid\":{{\"k\":{},\"d\":{}}}}},\
             \"route\":{route}}}",
            self.command.name(),
            num(p.alpha),
            num(p.gamma),
            num(p.t_i),
            num(p.t_inf),
            num(p.h0),
            num(p.liquid.k),
            num(p.liquid.d),
            num(p.solid.k),
            num(p.solid.d),
        )
    }
}

/// Whether the document sets `"command"` explicitly.
pub fn names_command(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.get("command").cloned())
        .is_some()
}
