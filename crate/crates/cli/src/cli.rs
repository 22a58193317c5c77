use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "vprim", version, about = "Spectra, automorphisms and synchronisation checks for finite digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Input file; `-` or omitted reads standard input.
#[derive(Debug, Args)]
pub struct Input {
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupAndMap {
    /// Permutation group in `.grp` format
    pub group: PathBuf,
    /// Transformation: `n <N>` header and one line of images
    pub map: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a named digraph in `.dg` format
    Construct {
        #[command(subcommand)]
        name: Construction,
        /// Write to this file instead of standard output
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Neighbourhood-intersection spectrum of a regular digraph
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Spectrum plus the branch (1) / branch (2) dichotomy check
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Automorphism group generators, order and transitivity flags
    Aut {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Symmetric design carried by a branch (1) digraph
    Design {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Feasible (valency, order) pairs for a given kappa
    Feasible {
        kappa: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the group synchronises the map
    Sync {
        #[command(flatten)]
        args: GroupAndMap,
        /// Print the constant word found
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Graph of point pairs that no semigroup element collapses
    CollapseGraph {
        #[command(flatten)]
        args: GroupAndMap,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a primitive group against a map of kernel type (p,2,1,...,1)
    CheckKernel {
        #[command(flatten)]
        args: GroupAndMap,
        #[arg(long)]
        json: bool,
    },
    /// Run a brute-force verification suite
    Oracle {
        #[command(subcommand)]
        suite: Suite,
        #[arg(long, global = true)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Interval circulant on Z_p with connection set {x+1, ..., x+d}
    Delta { p: usize, x: usize, d: usize },
    /// k-subsets of an m-set, adjacent when disjoint
    Kneser {
        m: usize,
        k: usize,
        #[arg(long)]
        loops: bool,
    },
    /// Folded 5-cube on 16 vertices
    Clebsch {
        #[arg(long)]
        loops: bool,
    },
    /// K4 x K4 rook's graph on 16 vertices
    HammingK4 {
        #[arg(long)]
        loops: bool,
    },
    Petersen,
    /// All non-loop arcs
    Complete { n: usize },
    /// Loops only
    Diagonal { n: usize },
    /// Every ordered pair
    Full { n: usize },
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Every circulant on Z_p with a near-twin pair is degenerate or an interval circulant
    Circulant { p: usize },
    /// Every relation on n points
    Exhaustive {
        n: usize,
        /// Permit n = 5 (about 33 million relations)
        #[arg(long)]
        n5: bool,
    },
    /// The kappa = 4 fixtures and feasible list
    Kappa4,
    /// Spectrum identities over the fixture battery
    Properties,
    /// Dichotomy over the fixture battery
    Dichotomy,
    /// Kernel types (2,2,1,...) and (3,2,1,...) against the primitive fixtures
    Kernel {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u8).range(5..=8))]
        max_degree: u8,
    },
    /// Synchronisation BFS against semigroup closure on random instances
    Sync {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}
