//! Command-line verifier: load a model file, run a named suite, emit a
//! report.
//!
//! Exit codes: 0 all checks passed, 1 at least one failure, 2 undecided
//! cases remain and --strict was given, 3 usage or model-file problems,
//! 4 the suite does not apply to the model's carrier kind.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use ering::report::{emit_report, ReportFormat};
use ering::{load_model, resolve_strategy, run_suite_with, SuiteError, SuiteId, Verdict};

#[derive(Parser)]
#[command(
    name = "verify",
    about = "Run law-verification suites against finite ring-with-effects models",
    disable_help_subcommand = true
)]
struct Args {
    /// Path to a JSON model file describing the carrier
    #[arg(long)]
    model: PathBuf,

    /// Suite to run: axioms, lemmas, effects, projections, omp,
    /// compression, boolean, bring, stone, or all
    #[arg(long)]
    suite: SuiteId,

    /// Seed for the deterministic case generator
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of sampled cases per law family (exhaustive suites ignore it
    /// where a complete enumeration is walked instead)
    #[arg(long, default_value_t = 2000)]
    budget: u64,

    /// Magnitude bound on generated ring elements
    #[arg(long, default_value_t = 6)]
    bound: u32,

    /// Treat undecided cases as a distinct nonzero exit (code 2)
    #[arg(long)]
    strict: bool,

    /// Write the report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(err) => {
            // help/version are successful exits, not usage errors
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            let _ = err.print();
            return ExitCode::from(3);
        }
    };

    let carrier = match load_model(&args.model) {
        Ok(c) => c,
        Err(err) => {
            eprintln!("verify: {err}");
            return ExitCode::from(3);
        }
    };

    let strategy = resolve_strategy(&carrier, args.seed, args.budget, args.bound);
    let report = match run_suite_with(&carrier, args.suite, &strategy) {
        Ok(r) => r,
        Err(err @ SuiteError::CapabilityMismatch { .. })
        | Err(err @ SuiteError::ExhaustiveUnavailable { .. }) => {
            eprintln!("verify: {err}");
            return ExitCode::from(4);
        }
        Err(err) => {
            eprintln!("verify: {err}");
            return ExitCode::from(3);
        }
    };

    let format = match args.format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    if let Err(err) = emit_report(&report, format, args.report.as_deref()) {
        eprintln!("verify: cannot write report: {err}");
        return ExitCode::from(3);
    }

    match report.verdict {
        Verdict::Fail => ExitCode::from(1),
        Verdict::Undecided if args.strict => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}
