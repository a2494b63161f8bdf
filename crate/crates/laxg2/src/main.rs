use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use laxg2::config::{parse_range, ConfigError, RunConfig, Suite};
use laxg2::fixture::{generate_fixture, Fixture};
use laxg2::suites::run_suites;
use laxg2::table::dimension_table;
use laxg2_core::sphere::Model;

/// Exact verification of Lax operator algebras of type G2 on the sphere.
#[derive(Parser)]
#[command(name = "laxg2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Comma separated subset of g2,jets,tyurin,grading,cocycle.
        #[arg(long)]
        suites: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Degree window lo:hi for the grading and cocycle suites.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print dim L_m and the measured bracket spread over a degree range.
    Table {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-3:3")]
        mrange: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Persist bases, the form ω and sampled admissible jets.
    Fixture {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a stored fixture without recomputing it.
    Replay {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

enum Failure {
    Config(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(format!("config error: {e}"))
    }
}

impl From<laxg2_core::Error> for Failure {
    fn from(e: laxg2_core::Error) -> Self {
        Failure::Config(format!("error: {e}"))
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify {
            config,
            suites,
            seed,
            trials,
            window,
            out,
        } => {
            let mut run = RunConfig::from_path(&config)?;
            if let Some(s) = suites {
                run.suites = Suite::parse_list(&s)?;
            }
            if let Some(s) = seed {
                run.seed = s;
            }
            if let Some(t) = trials {
                run.trials = t;
            }
            if let Some(w) = window {
                run.window = parse_range(&w)?;
            }
            run.validate()?;
            let report = run_suites(&run)?;
            write_or_print(out.as_deref(), &report.to_json())?;
            for r in report.failures() {
                eprintln!("FAIL {}: {}", r.id, r.anchor);
            }
            eprintln!(
                "{} checks, {} passed, {} failed",
                report.summary.total, report.summary.passed, report.summary.failed
            );
            Ok(report.all_passed())
        }
        Command::Table { config, mrange, json } => {
            let run = RunConfig::from_path(&config)?;
            let range = parse_range(&mrange)?;
            let table = dimension_table(&Model::new(run.configuration), range)?;
            if json {
                let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
                s.push('\n');
                print!("{s}");
            } else {
                print!("{}", table.render());
            }
            Ok(table.clean())
        }
        Command::Fixture { config, seed, out } => {
            let mut run = RunConfig::from_path(&config)?;
            if let Some(s) = seed {
                run.seed = s;
            }
            let fix = generate_fixture(&run)?;
            write_or_print(Some(&out), &fix.to_json())?;
            Ok(true)
        }
        Command::Replay { fixture, out } => {
            let text = std::fs::read_to_string(&fixture)
                .map_err(|e| Failure::Io(format!("{}: {e}", fixture.display())))?;
            let fix = Fixture::from_json(&text).map_err(|e| Failure::Config(format!("fixture: {e}")))?;
            let report = fix.check()?;
            write_or_print(out.as_deref(), &report.to_json())?;
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Config(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
