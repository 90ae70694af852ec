//! Thin CLI over the scenario runner and fuzzer.
//!
//! Exit status: 0 when every check holds, 1 when any check fails to hold
//! (or a per-check computation errors), 2 on input or scenario errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tscalc::harness::{
    emit_report, fuzz, fuzz_trial, run_scenario, summary_json, CheckFailure, FuzzConfig,
    ReportFormat, ScenarioSpec,
};

#[derive(Parser)]
#[command(
    name = "tscalc",
    about = "Verify Montgomery/Gruss/Ostrowski-type bounds on time scales"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

impl From<OutputFormat> for ReportFormat {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => ReportFormat::Json,
            OutputFormat::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks described by a scenario file.
    Check {
        /// Scenario file (UTF-8 JSON).
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a randomized campaign over random scales and polynomials.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        max_segments: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        /// Write the summary here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a single fuzz trial and print its reports.
    Replay {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trial: u64,
        #[arg(long, default_value_t = 6)]
        max_segments: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
    },
}

fn write_out(out: Option<&PathBuf>, bytes: &[u8]) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)
        }
    }
}

fn print_failures(failures: &[CheckFailure]) {
    for f in failures {
        let at = f
            .point
            .map(|p| format!(" at t = {p}"))
            .unwrap_or_default();
        eprintln!("check error: {} on '{}'{}: {}", f.check, f.function, at, f.error);
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { spec, format, out } => {
            let text = fs::read_to_string(&spec)
                .map_err(|e| format!("cannot read {}: {e}", spec.display()))?;
            let scenario: ScenarioSpec =
                serde_json::from_str(&text).map_err(|e| format!("bad scenario file: {e}"))?;
            let run = run_scenario(&scenario).map_err(|e| e.to_string())?;
            let bytes = emit_report(&run.reports, format.into());
            write_out(out.as_ref(), &bytes).map_err(|e| e.to_string())?;
            print_failures(&run.failures);
            Ok(run.all_hold())
        }
        Command::Fuzz {
            seed,
            trials,
            max_segments,
            max_degree,
            out,
        } => {
            let cfg = FuzzConfig {
                seed,
                trials,
                max_segments,
                max_poly_degree: max_degree,
                ..FuzzConfig::default()
            };
            let summary = fuzz(&cfg).map_err(|e| e.to_string())?;
            write_out(out.as_ref(), &summary_json(&summary)).map_err(|e| e.to_string())?;
            Ok(summary.violations == 0 && summary.trial_errors == 0)
        }
        Command::Replay {
            seed,
            trial,
            max_segments,
            max_degree,
        } => {
            let cfg = FuzzConfig {
                seed,
                trials: trial + 1,
                max_segments,
                max_poly_degree: max_degree,
                ..FuzzConfig::default()
            };
            let outcome = fuzz_trial(&cfg, trial).map_err(|e| e.to_string())?;
            let bytes = emit_report(&outcome.run.reports, ReportFormat::Json);
            write_out(None, &bytes).map_err(|e| e.to_string())?;
            print_failures(&outcome.run.failures);
            Ok(outcome.run.all_hold())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
