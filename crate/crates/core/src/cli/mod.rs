//! Command-line surface: `generate`, `analyze`, `subconfig` and `search`.
//!
//! Exit codes: 0 when every applicable certificate and asserted equality
//! holds, 1 when one fails, 2 on input errors.

pub mod commands;
pub mod format;
pub mod report;
pub mod search;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, OutFormat, Points, SubconfigMode};
use report::Report;
use search::SearchOptions;

#[derive(Debug, Parser)]
#[command(
    name = "negarr",
    version,
    about = "Exact H-constants and inequality certificates for line arrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Coords,
    Spectrum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Objective {
    MinH,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SubconfigArgs {
    /// Comma-separated 0-based line indices to delete.
    #[arg(long, value_delimiter = ',')]
    pub remove: Option<Vec<usize>>,
    /// Delete two lines meeting at a point of this multiplicity.
    #[arg(long)]
    pub pairs_meeting: Option<usize>,
    /// Equidistribution formula for D remaining lines, optionally with N
    /// points per line: `D` or `D,N`.
    #[arg(long)]
    pub formula: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a catalog arrangement, e.g. `fermat:5`, `pg2:4`, `wiman`.
    Generate {
        name: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Spectrum, H-constants and certificates of an arrangement file.
    Analyze {
        path: PathBuf,
        /// `full` or a point file.
        #[arg(long, default_value = "full")]
        points: String,
        /// Print the report as JSON with rationals as `{num, den}`.
        #[arg(long)]
        json: bool,
    },
    /// H-constants of a subarrangement.
    Subconfig {
        path: PathBuf,
        #[command(flatten)]
        mode: SubconfigArgs,
        /// Print the report as JSON with rationals as `{num, den}`.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for the most negative subarrangement.
    Search {
        path: PathBuf,
        /// Largest number of lines to delete.
        #[arg(long, default_value_t = 3)]
        max_remove: usize,
        #[arg(long, value_enum, default_value = "min-h")]
        objective: Objective,
        /// Largest number of subsets to visit (default: $NEGARR_BUDGET or 10^7).
        #[arg(long)]
        budget: Option<u128>,
        /// Evaluate every subset, even those the lower bound rules out.
        #[arg(long)]
        no_prune: bool,
        /// Print the report as JSON with rationals as `{num, den}`.
        #[arg(long)]
        json: bool,
    },
}

/// Output text and exit code.
pub fn execute(cli: Cli) -> Result<(String, i32), CliError> {
    let render = |r: Report, json: bool| {
        let code = r.exit_code();
        let mut text = if json { r.to_json() } else { r.to_text() };
        if json {
            text.push('\n');
        }
        (text, code)
    };
    match cli.command {
        Command::Generate { name, out, format } => {
            let format = format.map(|f| match f {
                FormatArg::Coords => OutFormat::Coords,
                FormatArg::Spectrum => OutFormat::Spectrum,
            });
            let text = commands::generate(&name, format)?;
            Ok((commands::write_output(out.as_ref(), &text)?.unwrap_or_default(), 0))
        }
        Command::Analyze { path, points, json } => {
            let points = if points == "full" {
                Points::Full
            } else {
                Points::File(PathBuf::from(points))
            };
            Ok(render(commands::analyze(&path, &points)?, json))
        }
        Command::Subconfig { path, mode, json } => {
            let mode = match (mode.remove, mode.pairs_meeting, mode.formula) {
                (Some(r), _, _) => SubconfigMode::Remove(r),
                (_, Some(m), _) => SubconfigMode::PairsMeeting(m),
                (_, _, Some(f)) => commands::parse_formula_arg(&f)?,
                _ => unreachable!("clap requires one mode"),
            };
            Ok(render(commands::subconfig(&path, &mode)?, json))
        }
        Command::Search {
            path,
            max_remove,
            objective: Objective::MinH,
            budget,
            no_prune,
            json,
        } => {
            let budget = commands::resolve_budget(budget, std::env::var("NEGARR_BUDGET").ok())?;
            let opts = SearchOptions {
                max_remove,
                budget,
                prune: !no_prune,
            };
            Ok(render(commands::search(&path, opts)?, json))
        }
    }
}

/// Runs the parsed command, printing to the standard streams.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
