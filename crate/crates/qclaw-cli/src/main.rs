//! `qclaw` - run the claw/collision/triangle simulators, scaling sweeps,
//! exponent fits, and adversary tables from the command line.
//!
//! Every run is reproducible from its flags: instances and schedules are
//! seeded (ChaCha8) and analytic numbers are exact expectations. Exit code 0
//! on success, 2 when a witness-bearing run reported absence, 1 on error.

mod output;
mod runner;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qclaw_core::adversary::FamilyKind;
use qclaw_core::report::Mode;

#[derive(Parser)]
#[command(
    name = "qclaw",
    version,
    about = "Comparison-model search simulation harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sampled,
    Analytic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sampled => Mode::Sampled,
            ModeArg::Analytic => Mode::Analytic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    ParityCollision,
    NoCollision,
    NoRange,
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> FamilyKind {
        match k {
            KindArg::ParityCollision => FamilyKind::ParityCollision,
            KindArg::NoCollision => FamilyKind::NoCollision,
            KindArg::NoRange => FamilyKind::NoRange,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Domain size of f (nodes for triangle runs).
    #[arg(long)]
    n: Option<usize>,
    /// Domain size of g (edge budget for triangle runs).
    #[arg(long)]
    m: Option<usize>,
    /// Cost mode.
    #[arg(long, value_enum, default_value = "sampled")]
    mode: ModeArg,
    /// Independent trials.
    #[arg(long, default_value = "1")]
    trials: usize,
    /// Master seed; trial streams and instances derive from it.
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Outer cutoff (rounds or applications, algorithm-dependent).
    #[arg(long)]
    cutoff: Option<u64>,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// JSON instance file instead of a generated instance. Claw-style
    /// commands accept a two-element array [f, g].
    #[arg(long)]
    instance: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generic claw finding between two unordered tables.
    Claw {
        #[command(flatten)]
        common: CommonArgs,
        /// Subset parameter override (default min(N, floor(sqrt(M)))).
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Element distinctness and its collision variants.
    Ed {
        #[command(flatten)]
        common: CommonArgs,
        /// Run the k-repeated-value variant.
        #[arg(long, conflicts_with_all = ["two_to_one", "distinct"])]
        k: Option<usize>,
        /// Run the 2-to-1 collision finder.
        #[arg(long, conflicts_with = "distinct")]
        two_to_one: bool,
        /// Run the classical sort-and-scan baseline.
        #[arg(long, conflicts_with_all = ["k", "two_to_one"])]
        classical: bool,
        /// Generate a collision-free instance (distinct values).
        #[arg(long)]
        distinct: bool,
    },
    /// Claw finding with ordered f.
    Ordered {
        #[command(flatten)]
        common: CommonArgs,
        /// Search the consecutive-pair collision space instead.
        #[arg(long)]
        collision: bool,
        /// Generate a claw-free instance pair.
        #[arg(long)]
        claw_free: bool,
    },
    /// Recursive claw finding when both tables are ordered.
    BothOrdered {
        #[command(flatten)]
        common: CommonArgs,
        /// Top-level block size override (default ceil(log2(N)^2)).
        #[arg(long)]
        r: Option<usize>,
        /// Generate a claw-free instance pair.
        #[arg(long)]
        claw_free: bool,
    },
    /// Triangle finding in the edge-slot model.
    Triangle {
        #[command(flatten)]
        common: CommonArgs,
        /// Search all node triples instead of the two-stage finder.
        #[arg(long)]
        all_triples: bool,
        /// Query every slot once (classical baseline).
        #[arg(long)]
        classical: bool,
    },
    /// Exhaustive adversary-relation tables.
    Adversary {
        /// Problem family.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Domain sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Scaling sweep with a log-log exponent fit.
    Scale {
        /// Algorithm id (ed, ed-classical, claw, ordered, ordered-collision,
        /// both-ordered, two-to-one, triangle-sparse, triangle-dense,
        /// grover-triples, triangle-classical).
        #[arg(long)]
        algorithm: String,
        /// Sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value = "analytic")]
        mode: ModeArg,
        #[arg(long, default_value = "1")]
        trials: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match runner::dispatch(cli.command) {
        Ok(exit) => std::process::exit(exit),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
