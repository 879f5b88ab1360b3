//! `leibniz`: verify Leibniz structures on the symplectic plane from JSON
//! descriptions. Exit status 0 when every check passes, 1 when one fails, 2
//! on unreadable input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{FieldMode, Generator, Settings};

#[derive(Parser, Debug)]
#[command(name = "leibniz", version, about = "Exact checks for Leibniz algebras as vector fields")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest cochain arity the graded bracket may produce.
    #[arg(long, global = true, default_value_t = 5)]
    max_arity: usize,
    /// Largest order of an exponential series before it is declared divergent.
    #[arg(long, global = true, default_value_t = 8)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Leibniz identity, Maurer-Cartan form and the invariance of the double.
    Check { algebra: PathBuf },
    /// Structure-field checks on an algebra or a field file.
    #[command(group(ArgGroup::new("mode").args(["check", "derive", "decompose"])))]
    Field {
        input: PathBuf,
        /// Cohomological, anti-cyclic and Leibniz flags (the default).
        #[arg(long)]
        check: bool,
        /// Derived bracket of two coordinate functions (1-based, p's first).
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        derive: Option<Vec<usize>>,
        /// The four bidegree components.
        #[arg(long)]
        decompose: bool,
    },
    /// The Leibniz Yang-Baxter equation for an r-matrix, or a grid search.
    #[command(group(ArgGroup::new("what").args(["r", "search"]).required(true).multiple(true)))]
    Lybe {
        algebra: PathBuf,
        r: Option<PathBuf>,
        /// Search all symmetric matrices with entries from a comma list.
        #[arg(long, allow_hyphen_values = true, value_name = "VALUES")]
        search: Option<String>,
        /// Also apply exp(X_H) for the r-matrix and re-check.
        #[arg(long)]
        flow: bool,
    },
    /// Torsion, complex structure and deformation checks for an operator.
    Nijenhuis {
        input: PathBuf,
        operator: PathBuf,
        /// Deformation parameter.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        /// Use the double built from the Killing form instead of the semidirect one.
        #[arg(long)]
        killing: bool,
    },
    /// Build the semidirect (or Killing) double and verify it.
    Double {
        algebra: PathBuf,
        #[arg(long)]
        killing: bool,
    },
    /// exp(X_H) applied to a structure field.
    #[command(group(ArgGroup::new("gen").args(["r", "field"]).required(true)))]
    Flow {
        input: PathBuf,
        /// Generator from an r-matrix file.
        #[arg(long)]
        r: Option<PathBuf>,
        /// Generator from a Hamiltonian field file.
        #[arg(long)]
        field: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let s = Settings {
        max_arity: cli.max_arity,
        max_order: cli.max_order,
    };
    let result = match &cli.command {
        Command::Check { algebra } => commands::check(algebra, s),
        Command::Field {
            input,
            derive,
            decompose,
            ..
        } => {
            let mode = match (derive, decompose) {
                (Some(ij), _) => FieldMode::Derive(ij[0], ij[1]),
                (None, true) => FieldMode::Decompose,
                _ => FieldMode::Check,
            };
            commands::field(input, mode, s)
        }
        Command::Lybe {
            algebra,
            r,
            search,
            flow,
        } => commands::lybe(algebra, r.as_deref(), search.as_deref(), *flow, s),
        Command::Nijenhuis {
            input,
            operator,
            t,
            killing,
        } => match leibniz_plane::rational::parse(t) {
            Ok(t) => commands::nijenhuis(input, operator, &t, *killing, s),
            Err(e) => Err(commands::InputError(format!("--t: {e}"))),
        },
        Command::Double { algebra, killing } => commands::double(algebra, *killing, s),
        Command::Flow { input, r, field } => {
            let generator = match (r, field) {
                (Some(r), _) => Generator::R(r),
                (None, Some(f)) => Generator::Field(f),
                (None, None) => unreachable!("clap requires one generator"),
            };
            commands::flow(input, generator, s)
        }
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                // timing stays out of the JSON so that reports are reproducible
                print!("{}", report.to_text());
                println!("elapsed: {:.3} ms", started.elapsed().as_secs_f64() * 1e3);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
