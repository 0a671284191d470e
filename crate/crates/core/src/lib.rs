//! Exact similarity solutions for two-phase melting with latent heat `gamma x^alpha` and a
//! convective face, with the special functions they need, a finite-difference cross-check
//! and the prescribed-temperature limit.

// `!(x > 0.0)` is used on purpose so that NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod limit_dirichlet;
pub mod oracle_fd;
pub mod root_solver;
pub mod specfun;
pub mod stefan_model;

pub use error::{Error, Result};
pub use limit_dirichlet::{convergence_study, solve_dirichlet, DirichletSolution, LimitRow};
pub use oracle_fd::{run_oracle, GridConfig, OracleRun};
pub use root_solver::{solve_monotone, MonotoneRootSpec};
pub use stefan_model::{
    solve, ConductionSolution, FreeBoundary, PhaseProps, SimilaritySolution, SolveOutcome,
    StefanProblem,
};
