use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use morita_cli::{exit_code, generate_demo, report_json, run_scenario, CliError, EXIT_MALFORMED};

#[derive(Parser)]
#[command(name = "morita", version, about = "Verify finite-dimensional Morita equivalence scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and report every check.
    Run {
        scenario: PathBuf,
        /// Numerical tolerance for rank decisions.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Keep only checks whose id starts with this prefix.
        #[arg(long)]
        check: Option<String>,
        /// Worker threads for parallel checks.
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Print or write a built-in demo scenario.
    Demo {
        /// e.g. group_algebra(Z3), pauli_bundle, involutive_m2
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn main_inner(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Run {
            scenario,
            tol,
            report,
            check,
            parallel,
        } => {
            let threads = parallel.unwrap_or(0);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Parse(format!("thread pool: {e}")))?;
            let mut rep = pool.install(|| run_scenario(&scenario, tol))?;
            if let Some(prefix) = check {
                rep = rep.filtered(&prefix);
            }
            print!("{rep}");
            let failed = rep.failures().count();
            println!(
                "{} checks, {failed} failed: {}",
                rep.len(),
                if rep.passed() { "PASS" } else { "FAIL" }
            );
            if let Some(path) = report {
                write(&path, &report_json(&rep))?;
            }
            Ok(exit_code(&rep))
        }
        Command::Demo { name, out } => {
            let json = generate_demo(&name)?.to_json();
            match out {
                Some(path) => write(&path, &json)?,
                None => println!("{json}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MALFORMED as u8)
        }
    }
}
