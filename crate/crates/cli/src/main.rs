use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use lgorb_cli::{emit, parse_job, run, Format, EXIT_ERROR, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Hodge diamonds of Landau-Ginzburg orbifolds.
#[derive(Debug, Parser)]
#[command(name = "lgorb", version)]
struct Args {
    /// Job file (`f = ...`, `vars = [...]`, `group = [...]`, `command = ...`).
    job: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Largest group order explored when closing the generators.
    #[arg(long, default_value_t = lgorb::symmetry::DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
    /// Skip the hypothesis checks and the diamond verification.
    #[arg(long)]
    no_verify: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.job.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let mut job = match parse_job(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {}: {e}", args.job.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    job.options.format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    job.options.closure_cap = args.closure_cap;
    job.options.verify = !args.no_verify;
    let report = match run(&job) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {} command failed: {e}", job.command);
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let out = emit(&report, job.options.format);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
        None => print!("{out}"),
    }
    if !report.verified() {
        eprintln!("verification failed");
        return ExitCode::from(EXIT_VERIFY);
    }
    ExitCode::from(EXIT_OK)
}
