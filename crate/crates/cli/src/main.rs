mod commands;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact computations with ADE shuffle algebras, AR quivers and fused currents.
#[derive(Parser, Debug)]
#[command(name = "adeshuffle", version)]
pub struct Cli {
    /// Worker threads for the verification grid (default: all cores).
    #[arg(long, global = true, env = "ADESHUFFLE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArgs {
    /// Dynkin type, e.g. A3, D4, E6.
    #[arg(long = "type")]
    pub dynkin: String,
    /// Oriented edges, 1-based, e.g. "1>2,3>2,4>2" (default: i>j for each edge i<j).
    #[arg(long)]
    pub orientation: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Refinement {
    /// Pairs minimal in at least one total refinement of the AR order.
    Any,
    /// Greedy refinement, ties broken by height then root index.
    Lex,
    /// Greedy refinement, ties broken by height then reverse root index.
    Revlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Records {
    All,
    Failures,
    None,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots and Cartan matrix.
    Roots {
        #[arg(long = "type")]
        dynkin: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The AR quiver of an orientation, as JSON or DOT.
    ArQuiver {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Minimal pairs of the AR order.
    MinimalPairs {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_enum, default_value_t = Refinement::Any)]
        refinement: Refinement,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Shuffle product of generators, e.g. --word "2:0,1:0" for z_{2,1}^0 * z_{1,1}^0.
    ShuffleMul {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Pairing of a product of generators with a word f_{i_1,-d_1} ... f_{i_k,-d_k}.
    Pairing {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// The element, as a generator word.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// The dual word, letters "i:d".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Specialization of a product of generators; with --v and --w also the
    /// two-point function, its poles and residue.
    Spec {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Dimension vector sent to x, e.g. "1,0".
        #[arg(long, requires = "w")]
        v: Option<String>,
        /// Dimension vector sent to y.
        #[arg(long, requires = "v")]
        w: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Residue checks of every minimal pair against a spanning set of its sum.
    VerifyFusion {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 2)]
        window: i32,
        /// Inclusive degree range, e.g. "-2..2".
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        degrees: String,
        /// Only this pair (index into the minimal-pairs list).
        #[arg(long)]
        pair: Option<usize>,
        #[arg(long, value_enum, default_value_t = Refinement::Any)]
        refinement: Refinement,
        #[arg(long, value_enum, default_value_t = Records::Failures)]
        records: Records,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Convex lattice paths.
    Paths {
        #[command(subcommand)]
        op: PathsOp,
    },
    /// Built-in consistency checks for one type.
    Selftest {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum PathsOp {
    /// Convex paths of a size not lying strictly below a bound.
    Enumerate {
        /// Path size "dx,dy".
        #[arg(long, allow_hyphen_values = true)]
        size: String,
        /// Legs "dx,dy;dx,dy;...".
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sort legs by slope and merge equal slopes.
    Convexify {
        #[arg(long, allow_hyphen_values = true)]
        legs: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Area between a lower and an upper path of the same size.
    Area {
        #[arg(long, allow_hyphen_values = true)]
        lower: String,
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
