use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use stefan_exact::{run, Command, Format, Invocation};

/// Exact solutions of two-phase melting with power-law latent heat and a convective face.
#[derive(Parser)]
#[command(name = "stefan-exact", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted and the config names none.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Suppress the stderr summary unless the command fails.
    #[arg(short, long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    ExitCode::from(run(&Invocation {
        command: args.command,
        config: args.config,
        output: args.output,
        format: args.format,
        quiet: args.quiet,
    }))
}
