mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use output::Format;

/// Fourier sampling laboratory for the symmetric group.
#[derive(Debug, Parser, Serialize)]
#[command(name = "hsplab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: one per core). Never changes results.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub jobs: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: from the --out extension, else csv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Omit the wall-clock stamp so output files are byte-reproducible.
    #[arg(long, global = true)]
    pub no_clock: bool,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Partitions of n with dimensions and conjugates.
    Partitions {
        #[arg(long)]
        n: usize,
    },
    /// The exact character table of S_n.
    Chartable {
        #[arg(long)]
        n: usize,
    },
    /// Checks Young's orthogonal form against the group law and characters.
    RepCheck {
        #[arg(long)]
        n: usize,
        /// Parts like 4,2, or max-dim, or all.
        #[arg(long, default_value = "all")]
        lambda: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Exact weak and strong sampling law for H = {1, m}.
    Sample {
        #[arg(long)]
        n: usize,
        /// Index into the matching class in enumeration order.
        #[arg(long)]
        matching_index: Option<usize>,
        /// The involution in 1-indexed cycle notation, or `identity`.
        #[arg(long, conflicts_with = "matching_index")]
        m: Option<String>,
        /// yor, random-orthonormal or overcomplete-2x.
        #[arg(long, default_value = "yor")]
        frame: String,
        /// Also draw this many outcomes from the law.
        #[arg(long, default_value_t = 0)]
        draws: usize,
    },
    /// Moments of <b, mb> by formula and by exhaustive averaging.
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        lambda: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// L1 distance between the strong sampling law and the natural law, per m.
    Tv {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "max-dim")]
        lambda: String,
        #[arg(long, default_value = "yor")]
        frame: String,
        /// `all`, or `sample:K` for K seeded conjugates.
        #[arg(long, default_value = "all")]
        sweep: String,
    },
    /// Exact Plancherel table with tail masses.
    Plancherel {
        #[arg(long)]
        n: usize,
        /// Also draw this many Plancherel partitions.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Normalized characters at the matching class.
    Roichman {
        #[arg(long)]
        n: usize,
    },
    /// Statistics of the partitions with a long first row or column.
    LambdaC {
        #[arg(long)]
        n: usize,
        /// A rational in (0, 1/4), e.g. 1/8.
        #[arg(long, default_value = "1/8")]
        c: String,
    },
    /// Exact L1 distance between weak sampling and Plancherel.
    WeakVsPlancherel {
        #[arg(long)]
        n: usize,
    },
    /// Characters of S_n wr Z_2.
    Wreath {
        #[arg(long)]
        n: usize,
        /// characters or structured.
        #[arg(long, default_value = "characters")]
        report: String,
        /// Threshold on |normalized character| for the structured tail mass.
        #[arg(long, default_value = "1/2")]
        threshold: String,
    },
    /// Runs the acceptance suite.
    SelfTest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Partitions { .. } => "partitions",
            Command::Chartable { .. } => "chartable",
            Command::RepCheck { .. } => "rep-check",
            Command::Sample { .. } => "sample",
            Command::Moments { .. } => "moments",
            Command::Tv { .. } => "tv",
            Command::Plancherel { .. } => "plancherel",
            Command::Roichman { .. } => "roichman",
            Command::LambdaC { .. } => "lambda-c",
            Command::WeakVsPlancherel { .. } => "weak-vs-plancherel",
            Command::Wreath { .. } => "wreath",
            Command::SelfTest => "self-test",
        }
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    if let Some(jobs) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
