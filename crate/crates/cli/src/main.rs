// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! `floquet` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use floquet_core::scenario::{builtin_descriptions, run_file, validate_file, Overrides};

#[derive(Parser)]
#[command(
    name = "floquet",
    version,
    about = "Floquet analysis of periodic Lindblad master equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every command of a scenario file and write the results.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Check a scenario file without running it.
    Validate { scenario: PathBuf },
    /// List the builtin models.
    ListModels,
}

#[derive(Args)]
struct OverrideArgs {
    /// Output directory (overrides `[output] dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certification tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Integrator step.
    #[arg(long)]
    step: Option<f64>,
    /// Grid points per period.
    #[arg(long)]
    grid: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run {
            scenario,
            overrides,
        } => {
            let o = Overrides {
                out: overrides.out,
                tol: overrides.tol,
                step: overrides.step,
                grid: overrides.grid,
            };
            match run_file(&scenario, &o) {
                Ok(summary) => {
                    for f in &summary.files {
                        println!("{}", f.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Cmd::Validate { scenario } => match validate_file(&scenario) {
            Ok(diags) if diags.is_empty() => {
                println!("ok");
                ExitCode::SUCCESS
            }
            Ok(diags) => {
                for d in &diags {
                    println!("{d}");
                }
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", scenario.display());
                ExitCode::from(2)
            }
        },
        Cmd::ListModels => {
            for (name, desc) in builtin_descriptions() {
                println!("{name:<20} {desc}");
            }
            ExitCode::SUCCESS
        }
    }
}
