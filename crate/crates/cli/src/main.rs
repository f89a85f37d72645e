mod commands;
mod corpus;
mod output;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sidigraph::analysis::PairKind;
use sidigraph::charpoly::DEFAULT_ENUMERATION_CAP;
use sidigraph::roots::{RootOptions, DEFAULT_CLUSTER_TOLERANCE};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "sidigraph", version, about = "Spectra, energy and products of signed directed graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
    /// Vertex cap for linear-subdigraph enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, global = true)]
    pub cap: usize,
    /// Clustering tolerance for computed eigenvalues.
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOLERANCE, global = true)]
    pub tol: f64,
}

impl GlobalOpts {
    pub fn root_options(&self) -> RootOptions {
        RootOptions { tolerance: self.tol, ..RootOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyMethodArg {
    Algebraic,
    Coulson,
    CoulsonLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CharpolyMethodArg {
    Trace,
    Enumerate,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report for one graph: polynomial, spectrum, energies, balance,
    /// zero-energy class, bounds and walk data.
    Analyze {
        file: PathBuf,
        /// Energy methods to run.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [EnergyMethodArg::Algebraic, EnergyMethodArg::Coulson])]
        methods: Vec<EnergyMethodArg>,
        /// Longest walk length reported.
        #[arg(long, default_value_t = 4)]
        walk_length: u32,
    },
    /// Run a group of golden checks: 2 energy basics, 3 cycles and
    /// integrals, 4 products and balance, 5 walks and bounds,
    /// 6 equienergetic pairs, or all.
    Reproduce { group: String },
    /// Evaluate properties over a seeded random corpus.
    Corpus(corpus::CorpusArgs),
    /// Build a NEPS product of graph files; the basis is a comma-separated
    /// list of bit strings such as 10,01.
    Neps {
        #[arg(long)]
        basis: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Energy of one graph.
    Energy {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EnergyMethodArg::Algebraic)]
        method: EnergyMethodArg,
    },
    /// Exact characteristic polynomial.
    Charpoly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CharpolyMethodArg::Trace)]
        method: CharpolyMethodArg,
        /// Also print the linear-subdigraph type census.
        #[arg(long)]
        census: bool,
    },
    /// Cycle balance with a potential or a negative-cycle witness.
    Balance { file: PathBuf },
    /// Build an equienergetic pair and its verification report.
    Pair {
        #[arg(value_parser = parse_pair_kind)]
        kind: PairKind,
        n: usize,
        /// Base graph for kron-skew (defaults to the positive n-cycle).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Order of the skew-symmetric star for kron-skew.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Write the two graphs as first.txt and second.txt here.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

fn parse_pair_kind(s: &str) -> Result<PairKind, String> {
    s.parse()
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, I/O or usage: exit 2.
    Usage(String),
    /// A check or method failed; the report was still printed: exit 1.
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Analyze { file, methods, walk_length } => commands::analyze(g, &file, &methods, walk_length),
        Command::Reproduce { group } => reproduce::run(g, &group),
        Command::Corpus(args) => corpus::run(g, &args),
        Command::Neps { basis, files } => commands::neps(g, &basis, &files),
        Command::Energy { file, method } => commands::energy(g, &file, method),
        Command::Charpoly { file, method, census } => commands::charpoly(g, &file, method, census),
        Command::Balance { file } => commands::balance(g, &file),
        Command::Pair { kind, n, base, m, emit_dir } => commands::pair(g, kind, n, base.as_deref(), m, emit_dir.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
