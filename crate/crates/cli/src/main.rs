//! `erasure-ic`: batch front end for region, regime and verification runs.
//!
//! Exit codes: 0 ok, 1 I/O or other failure, 2 parse error, 3 unbounded
//! region, 4 verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use erasure_ic::bounds::{self, BoundRegistry};
use erasure_ic::export;
use erasure_ic::regime::{self, Regime};
use erasure_ic::spec_file::{self, SpecFile};
use erasure_ic::verify::{SuiteOptions, SuiteRegistry};
use erasure_ic::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNBOUNDED: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "erasure-ic", version, about = "Outer bounds and capacity regions for layered erasure interference channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Channel spec file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Weight schedule: critical weights or a uniform grid.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, global = true, default_value_t = bounds::DEFAULT_GRID_STEPS)]
    grid_steps: u32,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Outer-bound polytope with its active constraints.
    Region,
    /// Regime report, with the capacity region when it is known.
    Classify,
    /// Run a verification suite.
    Verify {
        /// deterministic, coupling, montecarlo or inclusions
        suite: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Grid,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Grid => "grid",
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Spec(_) => EXIT_PARSE,
            Error::Unbounded(_) => EXIT_UNBOUNDED,
            Error::Range(_) | Error::Regime(_) => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load(cli: &Cli) -> Result<SpecFile, Failure> {
    let path = cli.spec.as_deref().ok_or(Failure { code: EXIT_PARSE, message: "--spec PATH is required".into() })?;
    Ok(spec_file::read_spec(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure { code: EXIT_FAILURE, message: format!("{}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn cmd_region(cli: &Cli) -> Result<(), Failure> {
    let file = load(cli)?;
    let schedule = bounds::schedule_by_name(cli.mode.name(), cli.grid_steps)?;
    let constraints = bounds::constraints(&file.spec, &BoundRegistry::standard(), schedule.as_ref());
    let region = bounds::region_of(&constraints)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let active = bounds::active_constraints(&constraints, &region);
            with_newline(export::region_json(&region, &active))
        }
        Format::Csv => export::region_csv(&region),
        Format::Svg => {
            let weak = match regime::classify(&file.spec).regime {
                Regime::Weak => Some(regime::weak_annotations(&file.spec)?),
                _ => None,
            };
            let title = file.label.as_deref().unwrap_or("outer bound");
            export::region_svg(&region, title, weak.as_ref())
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn cmd_classify(cli: &Cli) -> Result<(), Failure> {
    let file = load(cli)?;
    let doc = export::classification_json(&file.spec, file.label.as_deref())?;
    emit(cli.out.as_deref(), &with_newline(doc))
}

fn cmd_verify(cli: &Cli, name: &str) -> Result<(), Failure> {
    let registry = SuiteRegistry::standard();
    let suite = registry.get(name).ok_or_else(|| Failure {
        code: EXIT_PARSE,
        message: format!("unknown suite {name:?}; expected one of {}", registry.names().join(", ")),
    })?;
    let report = suite.run(&SuiteOptions { samples: cli.samples, seed: cli.seed });
    let text = match cli.format {
        Some(Format::Json) => with_newline(export::suite_report_json(&report)),
        Some(other) => {
            let fmt = if other == Format::Csv { "csv" } else { "svg" };
            return Err(Failure { code: EXIT_PARSE, message: format!("verify does not support --format {fmt}") });
        }
        None => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            let total = report.checks.len();
            s.push_str(&format!("{}: {}/{total} checks pass\n", report.suite, total - report.failures()));
            s
        }
    };
    emit(cli.out.as_deref(), &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("{}: {} failing checks", report.suite, report.failures()) })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Region => cmd_region(&cli),
        Command::Classify => cmd_classify(&cli),
        Command::Verify { suite } => cmd_verify(&cli, suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("erasure-ic: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
