//! Batch driver CLI: reduction verification, distribution statistics, and
//! the bound calculator. Prints a JSON report to stdout; the process exits
//! zero exactly when the report counts zero failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lbx::driver::{
    cmd_bounds, cmd_stats, cmd_verify, BoundsParams, StatsParams, VerifyParams, VERIFY_NAMES,
};
use lbx::report::Report;

#[derive(Parser)]
#[command(name = "lbx", version, about = "Reduction verification driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one reduction's verification suite.
    #[command(after_help = format!("Known reductions: {}", VERIFY_NAMES.join(", ")))]
    Verify {
        /// Which reduction to verify.
        name: String,
        /// Butterfly degree.
        #[arg(long = "b", default_value_t = 2)]
        degree: u32,
        /// Butterfly depth.
        #[arg(long = "d", default_value_t = 2)]
        depth: usize,
        /// Block count for the disjointness suites.
        #[arg(long = "N", default_value_t = 8)]
        blocks: usize,
        /// Block size for the disjointness suites.
        #[arg(long = "B", default_value_t = 4)]
        block_size: usize,
        /// Batch width for the compiler suite.
        #[arg(long = "k", default_value_t = 2)]
        parallel: usize,
        /// Randomized-corpus size.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Randomized-corpus seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Prefer the exhaustive corpus where the thresholds allow it.
        #[arg(long)]
        exhaustive: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report hard-distribution statistics.
    Stats {
        /// Block count.
        #[arg(long = "N", default_value_t = 2)]
        blocks: usize,
        /// Block size (even).
        #[arg(long = "B", default_value_t = 4)]
        block_size: usize,
        /// Designated block, 1-based.
        #[arg(long = "k", default_value_t = 1)]
        designated: usize,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use exact enumeration where it applies (N = 1).
        #[arg(long)]
        exhaustive: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the query-time bound formula.
    Bounds {
        /// Problem size.
        #[arg(long = "n", default_value_t = 1 << 20)]
        n: u64,
        /// Cell count.
        #[arg(long = "S", default_value_t = 1 << 20)]
        space: u64,
        /// Cell width in bits.
        #[arg(long = "w", default_value_t = 64)]
        word: u64,
        /// Echoed into the report; nothing is derived from it.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run() -> lbx::Result<Report> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            name,
            degree,
            depth,
            blocks,
            block_size,
            parallel,
            trials,
            seed,
            exhaustive,
            out,
        } => {
            let params = VerifyParams {
                degree,
                depth,
                blocks,
                block_size,
                parallel,
                trials,
                seed,
                exhaustive,
            };
            emit(cmd_verify(&name, &params)?, out)
        }
        Command::Stats { blocks, block_size, designated, samples, seed, exhaustive, out } => {
            let params =
                StatsParams { blocks, block_size, designated, samples, seed, exhaustive };
            emit(cmd_stats(&params)?, out)
        }
        Command::Bounds { n, space, word, delta, out } => {
            let params = BoundsParams { n, space, word, delta };
            emit(cmd_bounds(&params)?, out)
        }
    }
}

fn emit(report: Report, out: Option<PathBuf>) -> lbx::Result<Report> {
    let json = report.to_json()?;
    print!("{json}");
    if let Some(path) = out {
        std::fs::write(path, &json)?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run() {
        Ok(report) if report.is_success() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
