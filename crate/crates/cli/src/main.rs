use std::process::ExitCode;

use clap::{Parser, Subcommand};
use persub_cli::commands::{
    bound_rows, format_bound_table, run_compare, run_gen, run_solve, BoundArgs, GenArgs, SolveArgs,
};
use persub_cli::files::write_atomic;
use persub_cli::{CliError, Result};

/// Personalized submodular maximization with several candidate solutions.
#[derive(Debug, Parser)]
#[command(name = "persub", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random instance file from a seed.
    Gen(GenArgs),
    /// Solve an instance and emit a report.
    Solve(SolveArgs),
    /// Solve, run the exhaustive oracles, and check the approximation guarantees.
    Compare(SolveArgs),
    /// Print the sampling solver's expectation bound for each (T, eps).
    Bound(BoundArgs),
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => emit(args.out.as_deref(), &run_gen(&args)?.to_text()),
        Command::Solve(args) => emit(args.out.as_deref(), &run_solve(&args)?.to_text()),
        Command::Compare(args) => {
            let report = run_compare(&args)?;
            emit(args.out.as_deref(), &report.to_text())?;
            let failed: Vec<_> = report
                .failed_checks()
                .iter()
                .map(|c| c.name.clone())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(failed.join(", ")))
            }
        }
        Command::Bound(args) => {
            print!("{}", format_bound_table(&bound_rows(&args)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
