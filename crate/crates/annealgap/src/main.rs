//! Thin command-line front end; all logic lives in the library.
//!
//! Exit codes: 0 success, 1 usage, 2 data, 3 numerical.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use annealgap::cli::{
    cmd_compare, cmd_generate, cmd_plot, cmd_stats, CompareOpts, GenerateOpts, PlotKind, PlotOpts,
    StatsOpts,
};
use annealgap::error::Error;

#[derive(Parser)]
#[command(name = "annealgap", version, about = "Minimum-gap statistics for annealing MWIS problems with XX catalysts")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random problem instances into a line-delimited JSON file.
    Generate {
        /// Graph ensemble: er or ba.
        #[arg(long)]
        model: String,
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Edge probability (er only).
        #[arg(long)]
        p: Option<f64>,
        /// Edges per new vertex (ba only).
        #[arg(long)]
        m: Option<usize>,
        /// Number of instances.
        #[arg(long)]
        count: usize,
        /// Master seed; per-instance seeds derive from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output instance file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute paired minimum gaps (with and without catalyst) per instance.
    Compare {
        /// Input instance file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Catalyst strength (negative is stoquastic).
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        jc: f64,
        /// Number of s-grid points.
        #[arg(long, default_value_t = 501)]
        grid: usize,
        /// Set to "none" to skip the catalyzed arm.
        #[arg(long)]
        catalyst: Option<CatalystArg>,
        /// Output results file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a results file: improved fraction, geometric mean, bins.
    Stats {
        /// Input results file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Hard-instance filter on the uncatalyzed gap.
        #[arg(long, default_value_t = 1e-1)]
        hard_threshold: f64,
        /// Bootstrap resamples.
        #[arg(long, default_value_t = 1000)]
        bootstrap: usize,
        /// Seed of the bootstrap stream.
        #[arg(long, default_value_t = 0)]
        bootstrap_seed: u64,
        /// Confidence level for the intervals.
        #[arg(long, default_value_t = 0.95)]
        ci: f64,
    },
    /// Render a results or scaling file as a static SVG.
    Plot {
        /// Input file (results for scatter/box, scaling summary for scaling).
        #[arg(long = "in")]
        input: PathBuf,
        /// Plot kind.
        #[arg(long, value_enum)]
        kind: PlotArg,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalystArg {
    None,
    Xx,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotArg {
    Scatter,
    Box,
    Scaling,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parameter(_) | Error::Capacity(_) => 1,
        Error::Numerical { .. } => 3,
        _ => 2,
    }
}

fn run(args: Args) -> Result<u8, Error> {
    match args.command {
        Command::Generate { model, n, p, m, count, seed, out } => {
            cmd_generate(&GenerateOpts { model, n, p, m, count, seed, out })?;
            Ok(0)
        }
        Command::Compare { input, jc, grid, catalyst, out } => {
            let outcome = cmd_compare(&CompareOpts {
                input,
                out,
                j_c: jc,
                grid,
                catalyst_none: matches!(catalyst, Some(CatalystArg::None)),
            })?;
            if outcome.total > 0 && outcome.failed == outcome.total {
                eprintln!("annealgap: compare: all {} records failed", outcome.total);
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Command::Stats { input, hard_threshold, bootstrap, bootstrap_seed, ci } => {
            let report = cmd_stats(&StatsOpts {
                input,
                hard_threshold,
                bootstrap,
                bootstrap_seed,
                ci_level: ci,
            })?;
            print!("{report}");
            Ok(0)
        }
        Command::Plot { input, kind, out } => {
            let kind = match kind {
                PlotArg::Scatter => PlotKind::Scatter,
                PlotArg::Box => PlotKind::Box,
                PlotArg::Scaling => PlotKind::Scaling,
            };
            cmd_plot(&PlotOpts { input, kind, out })?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let line = first.lines().next().unwrap_or("invalid usage");
            eprintln!("annealgap: {line}");
            return ExitCode::from(1);
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("annealgap: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
