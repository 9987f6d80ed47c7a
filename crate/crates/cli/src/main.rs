//! `genhuff`: optimal prefix codes, redundancy bounds, bound sweeps and
//! verification campaigns from the command line.
//!
//! Exit codes: 0 success, 1 verification failure or I/O error, 2 usage or
//! input error.

mod commands;
mod error;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genhuff::Objective;

use crate::error::{CliError, Result};
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "genhuff", version, about = "Generalized Huffman coding and redundancy bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an optimal code for the probabilities in INPUT.
    Code {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[command(flatten)]
        source: SourceArgs,
        /// One probability per line, or a JSON array; `-` reads stdin.
        input: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bounds on the optimal value given one probability or a whole source.
    Bounds {
        #[command(flatten)]
        objective: ObjectiveArgs,
        /// The known probability `p_j`.
        #[arg(long)]
        p: Option<f64>,
        /// 1-based rank of the symbol the bound is keyed on; 1 is the most likely.
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[command(flatten)]
        source: SourceArgs,
        /// Source file; required for `expavg`, else an alternative to `--p`.
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tabulate bound curves over a grid.
    Sweep {
        #[arg(value_enum)]
        figure: Figure,
        /// Grid spacing, in (0, 0.1].
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Exponent for the `dexp` figure.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        d: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the randomized invariant battery, or check one witness family.
    Verify {
        /// Largest alphabet drawn, 2 to 12.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum)]
        family: Option<verify::FamilyName>,
        #[arg(long)]
        p1: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The leading-digit worked example at q = 0.6 and q = 2.
    Benford {
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveKind {
    Avg,
    Mmpr,
    Dexp,
    Expavg,
}

#[derive(Args, Debug)]
struct ObjectiveArgs {
    #[arg(long, value_enum)]
    objective: ObjectiveKind,
    /// Exponent for `dexp`, in (-1, 0) or (0, inf).
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Base for `expavg`, positive and not 1.
    #[arg(long)]
    q: Option<f64>,
}

impl ObjectiveArgs {
    fn resolve(&self) -> Result<Objective> {
        let need = |v: Option<f64>, flag: &str| {
            let name = self.objective.to_possible_value().expect("no skipped variants");
            v.ok_or_else(|| CliError::Usage(format!("--objective {} needs {flag}", name.get_name())))
        };
        Ok(match self.objective {
            ObjectiveKind::Avg => Objective::AvgRedundancy,
            ObjectiveKind::Mmpr => Objective::MaxPointwise,
            ObjectiveKind::Dexp => Objective::dth_exp(need(self.d, "--d")?)?,
            ObjectiveKind::Expavg => Objective::exp_average(need(self.q, "--q")?)?,
        })
    }
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Divide by the total instead of rejecting sums away from 1.
    #[arg(long)]
    normalize: bool,
    /// Require the input to be nonincreasing instead of sorting it.
    #[arg(long)]
    assume_sorted: bool,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Mmpr,
    Dexp,
    L1region,
}

/// Outcome of a command that produced output.
enum Status {
    Ok,
    Failed,
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Code { objective, source, input, out } => {
            let obj = objective.resolve()?;
            let raw = input::parse_probabilities(&input::read_source(&input)?)?;
            let report = commands::code(obj, &raw, source.normalize, source.assume_sorted)?;
            let text = report.render(out.format.unwrap_or(Format::Json))?;
            output::emit(out.out.as_deref(), &text)?;
        }
        Command::Bounds { objective, p, j, source, input, out } => {
            let obj = objective.resolve()?;
            let raw = match &input {
                Some(path) => Some(input::parse_probabilities(&input::read_source(path)?)?),
                None => None,
            };
            let query = commands::BoundsQuery {
                objective: obj,
                p,
                j,
                raw: raw.as_deref(),
                normalize: source.normalize,
                assume_sorted: source.assume_sorted,
            };
            let report = commands::bounds(&query)?;
            let text = report.render(out.format.unwrap_or(Format::Json))?;
            output::emit(out.out.as_deref(), &text)?;
        }
        Command::Sweep { figure, step, d, out } => {
            let text = commands::sweep(figure, step, d, out.format.unwrap_or(Format::Csv))?;
            output::emit(out.out.as_deref(), &text)?;
        }
        Command::Verify { n, trials, seed, family, p1, q, eps, out } => {
            let format = out.format.unwrap_or(Format::Json);
            let (text, passed) = match family {
                Some(name) => verify::family(name, p1, q, eps, format)?,
                None => verify::battery(n, trials, seed, format)?,
            };
            output::emit(out.out.as_deref(), &text)?;
            if !passed {
                return Ok(Status::Failed);
            }
        }
        Command::Benford { out } => {
            let text = commands::benford(out.format.unwrap_or(Format::Plain))?;
            output::emit(out.out.as_deref(), &text)?;
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
