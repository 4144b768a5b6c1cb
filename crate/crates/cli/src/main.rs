use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
mod input;

/// Distance-regular Cayley graphs, difference sets and the bridges between them.
#[derive(Debug, Parser)]
#[command(name = "cayley-drg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build or inspect a group.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Certify a Cayley graph.
    #[command(subcommand)]
    Cayley(CayleyCommand),
    /// Classify a subset of a group.
    #[command(subcommand)]
    Diffset(DiffsetCommand),
    /// Develop a subset into an incidence structure and classify it.
    Develop(DevelopArgs),
    /// Move between connection sets and difference sets.
    #[command(subcommand)]
    Bridge(BridgeCommand),
    /// Exact spectral checks.
    #[command(subcommand)]
    Spectrum(SpectrumCommand),
    /// Backtracking search; solutions are printed as JSON lines.
    Search(SearchArgs),
    /// Reconstructions of known examples.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
enum GroupCommand {
    /// Print the group file for a spec.
    Make {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order, element orders, involutions and index-2 subgroups.
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Group file or spec.
    #[arg(long)]
    group: String,
    /// Connection set: labels, indices or words.
    #[arg(long)]
    set: String,
    /// Write the graph in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CayleyCommand {
    /// Exit 0 if the graph is distance-regular (with the expected array, if given).
    Check {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        expect: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Ds,
    Rds,
    Pgds,
    /// Partial μ-geometric; needs `--mu`.
    Pmgds,
    /// Symmetric relative difference set.
    Srds,
}

#[derive(Debug, Subcommand)]
enum DiffsetCommand {
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Generators of the forbidden subgroup; discovered when omitted.
        #[arg(long)]
        forbidden: Option<String>,
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Difference, reverse-difference and triple-product counts.
    Profile {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
    },
}

#[derive(Debug, Args)]
struct DevelopArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    set: String,
    /// Write the design file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the incidence graph in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum BridgeCommand {
    /// Recover `D = S a^-1` and its family from a bipartite Cayley DRG.
    Extract(GraphInput),
    /// `Cay(Dih(H), {c h : h ∈ D})` for abelian `H`.
    Dih {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// `Cay(G, D a)` for an index-2 subgroup `H` and `a ∉ H`.
    Embed {
        #[arg(long)]
        group: String,
        /// Generators of `H`.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Which case guarantees an isomorphic graph on a semidirect product.
    Guarantee(GraphInput),
    /// Transport to `H ⋊ <c>` with `c` acting by inversion.
    Transport {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        a: String,
    },
    /// Split by a cyclic index-2 subgroup generated by `--cyclic`.
    Dihedral {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        cyclic: String,
    },
}

#[derive(Debug, Subcommand)]
enum SpectrumCommand {
    /// Annihilation by the array polynomial and by optional explicit factors.
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Factors such as `q9,q2,l0` for `(A^2-9I)(A^2-2I)(A-0I)`.
        #[arg(long)]
        factors: Option<String>,
    },
    /// Eigenvalues of the circulant with the given residues modulo `n`.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        residues: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchKind {
    Ds,
    Rds,
    Pgds,
    Connset,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(value_enum)]
    kind: SearchKind,
    #[arg(long)]
    group: String,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    beta: Option<usize>,
    /// Generators of the forbidden subgroup.
    #[arg(long)]
    forbidden: Option<String>,
    /// Target array for `connset`; omitted means any bipartite diameter-3 DRG with μ < k-1.
    #[arg(long)]
    array: Option<String>,
    /// Stop after this many solutions.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    node_budget: Option<u64>,
    /// Search exhaustively and report an exhaustion certificate.
    #[arg(long)]
    certificate: bool,
    /// Emit every set instead of one per translate class.
    #[arg(long)]
    no_pruning: bool,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    List,
    Run {
        name: String,
        /// Overrides the entry's integer parameter (`q` or `n`).
        #[arg(long)]
        param: Option<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] cayley_drg::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What a successful command established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Falsified,
}

impl Outcome {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Verified
        } else {
            Outcome::Falsified
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(Outcome::Verified) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => ExitCode::from(1),
        Err(CliError::Library(e @ cayley_drg::Error::Inconsistency(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
