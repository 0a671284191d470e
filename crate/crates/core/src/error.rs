use thiserror::Error;

/// Errors raised by the special functions, the solvers and the verification oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{function}: parameter outside the supported domain ({reason})")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("{function}: series did not converge within {terms} terms")]
    NonConvergence {
        function: &'static str,
        terms: usize,
    },

    #[error("{function}: result overflowed")]
    Overflow { function: &'static str },

    #[error(
        "{function}: cancellation in the connection formula and no quadrature fallback (a = {a})"
    )]
    Cancellation { function: &'static str, a: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    Quadrature { tolerance: f64, estimate: f64 },

    #[error("denominator {what} = {value:e} is too small")]
    DivisionGuard { what: &'static str, value: f64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("root solver: residual at the lower bracket end is {0:e}, expected > 0")]
    NoPositiveStart(f64),

    #[error("root solver: no sign change after {doublings} doublings (upper probe {hi:e})")]
    NoSignChange { doublings: usize, hi: f64 },

    #[error("root solver: residual is not monotone decreasing near x = {x:e}")]
    NonMonotone { x: f64 },

    #[error("root solver: bracket collapsed but |residual| = {residual:e} exceeds {tolerance:e}")]
    ResidualTolerance { residual: f64, tolerance: f64 },

    #[error("{phase} temperature requested at x = {x} outside the phase (front at {front})")]
    OutsidePhase {
        phase: &'static str,
        x: f64,
        front: f64,
    },

    #[error("two-phase solution required but h0 = {h0} does not exceed the threshold {threshold}")]
    BelowThreshold { h0: f64, threshold: f64 },

    #[error("oracle grid: {0}")]
    Grid(String),

    #[error("oracle became unstable at t = {t}")]
    Unstable { t: f64 },

    #[error("oracle front left the domain: s = {front} > 0.8 * x_max at t = {t}")]
    FrontExit { front: f64, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
