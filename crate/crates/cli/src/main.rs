//! `lci`: command-line front end for lattice conditional independence models.

mod commands;
mod error;
mod input;
mod render;
mod repro;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{DualArgs, SeriesArgs, TdagArgs};
use crate::error::{CliError, CliResult};
use crate::input::ModelArgs;
use crate::render::Format;
use crate::repro::ReproArgs;
use crate::verify::{EntropyArgs, VerifyArgs};

#[derive(Parser, Debug)]
#[command(name = "lci", version, about = "Lattice conditional independence models")]
struct Cli {
    /// Output format; each subcommand has its own default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled models
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for numeric checks (default 1e-10 discrete, 1e-9 Gaussian)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Limit on enumerated lattice elements and ideal generators
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: usize,
    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distributive lattice generated by a family of sets
    Lattice(ModelArgs),
    /// Hibi binomials and the monomial parametrization
    Hibi(ModelArgs),
    /// Squarefree ideal of the join-irreducible poset
    Ideal(ModelArgs),
    /// Alexander dual of a squarefree monomial ideal
    Dual(DualArgs),
    /// Transitive DAG of a lattice
    Tdag(TdagArgs),
    /// Conditional independence statements of a lattice
    Ci(ModelArgs),
    /// Check a discrete or Gaussian model against the lattice
    Verify(VerifyArgs),
    /// Hub-structured time-series model
    Timeseries(SeriesArgs),
    /// Information valuation with increments along the Hasse diagram
    Entropy(EntropyArgs),
    /// Regenerate a reference artifact and diff it against the golden copy
    Repro(ReproArgs),
    /// Lattice, binomials, ideal, dual, recovered TDAG and CI list in one run
    Pipeline(ModelArgs),
}

/// Options shared by every subcommand.
pub struct Global {
    pub format: Option<Format>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub cap: usize,
}

impl Global {
    pub fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn run(cli: &Cli) -> CliResult<(String, Option<CliError>)> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::usage("--tol must be positive"));
        }
    }
    if cli.cap == 0 {
        return Err(CliError::usage("--cap must be positive"));
    }
    let g = Global { format: cli.format, seed: cli.seed, tol: cli.tol, cap: cli.cap };
    let ok = |s: String| Ok((s, None));
    match &cli.command {
        Command::Lattice(m) => ok(commands::lattice(m, &g)?),
        Command::Hibi(m) => ok(commands::hibi(m, &g)?),
        Command::Ideal(m) => ok(commands::ideal(m, &g)?),
        Command::Dual(a) => ok(commands::dual(a, &g)?),
        Command::Tdag(a) => ok(commands::tdag(a, &g)?),
        Command::Ci(m) => ok(commands::ci(m, &g)?),
        Command::Verify(a) => verify::verify(a, &g),
        Command::Timeseries(a) => ok(commands::timeseries(a, &g)?),
        Command::Entropy(a) => ok(verify::entropy(a, &g)?),
        Command::Repro(a) => {
            if cli.format.is_some() {
                return Err(CliError::usage("repro has a fixed output format"));
            }
            repro::repro(a)
        }
        Command::Pipeline(m) => commands::pipeline(m, &g),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, failure)| {
        emit(cli.out.as_ref(), &text)?;
        failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
