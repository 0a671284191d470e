//! Config-driven front end: `stefan-exact <solve|verify|sweep|limit> --config <path>`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

pub use commands::{cmd_limit, cmd_solve, cmd_sweep, cmd_verify, Outcome};
pub use config::{parse_config, Command, Format, RunConfig};
pub use error::{CliError, Result};

/// Command-line request after argument parsing.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub quiet: bool,
}

/// Loads the config, runs the command and writes its output. Returns the process exit code.
pub fn run(inv: &Invocation) -> u8 {
    match execute(inv) {
        Ok(outcome) => outcome.exit_code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(inv: &Invocation) -> Result<Outcome> {
    let text = std::fs::read_to_string(&inv.config)
        .map_err(|e| CliError::io(format!("cannot read {}", inv.config.display()), e))?;
    let mut cfg = parse_config(&text)?.for_command(inv.command, config::names_command(&text))?;
    if let Some(f) = inv.format {
        cfg.output.format = f;
    }
    if let Some(p) = &inv.output {
        cfg.output.path = Some(p.clone());
    }

    let outcome = match cfg.command {
        Command::Solve => cmd_solve(&cfg)?,
        Command::Verify => cmd_verify(&cfg)?,
        Command::Limit => cmd_limit(&cfg)?,
        Command::Sweep => {
            let env = std::env::var(commands::THREADS_ENV).ok();
            cmd_sweep(&cfg, commands::thread_cap(env.as_deref())?)?
        }
    };

    write_output(cfg.output.path.as_deref(), &outcome.body)?;
    if !inv.quiet || outcome.exit_code != 0 {
        for line in &outcome.summary {
            eprintln!("{line}");
        }
    }
    Ok(outcome)
}

fn write_output(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| CliError::io(format!("cannot write {}", p.display()), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("cannot write to stdout", e))
        }
    }
}
