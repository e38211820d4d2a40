use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "szf",
    version,
    about = "Skew zero forcing and adjacency nullspace toolkit"
)]
pub struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Graph or hypergraph source: a JSON file, inline JSON, or a generator
/// spec such as `path:4`.
#[derive(Debug, Clone, Args)]
pub struct Source {
    pub input: String,

    /// Seed for random generators.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SetArg {
    /// Comma-separated vertex list; the empty string is the empty set.
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generated graph or hypergraph.
    Gen {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Structural report for a graph or hypergraph.
    Validate {
        #[command(flatten)]
        source: Source,
        /// Report as a hypergraph even when every edge has size two.
        #[arg(long)]
        hyper: bool,
    },
    #[command(subcommand)]
    Szf(SzfCommand),
    #[command(subcommand)]
    Zf(ZfCommand),
    #[command(subcommand)]
    Kernel(KernelCommand),
    #[command(subcommand)]
    Tree(TreeCommand),
    #[command(subcommand)]
    Matroid(MatroidCommand),
    #[command(subcommand)]
    Complete(CompleteCommand),
    #[command(subcommand)]
    Hyper(HyperCommand),
    /// Run every instance of a manifest and check its expectations.
    Batch {
        manifest: PathBuf,
        /// Maximum number of instances evaluated at once.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SzfCommand {
    /// SZF closure of a set, with its forcing trace.
    Close {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        set: SetArg,
    },
    /// Greedy SZF number, and the exact one with --exact.
    Number {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_ENUM_CAP)]
        cap: usize,
    },
    /// Every SZF-closed set.
    ClosedSets {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_ENUM_CAP)]
        cap: usize,
        /// Attach a matroid verification report.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZfCommand {
    /// Exact zero forcing number.
    Number {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_ENUM_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum KernelCommand {
    /// Exact basis of the adjacency nullspace.
    Nullspace {
        #[command(flatten)]
        source: Source,
    },
    /// Smallest realizable set containing the given set.
    Hat {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        set: SetArg,
    },
    /// Whether the set is the zero locus of a nullvector.
    Realizable {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        set: SetArg,
    },
    /// A nullvector whose zero locus is exactly the set.
    Witness {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        set: SetArg,
    },
    /// Flats of the kernel matroid.
    Matroid {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::matroid::DEFAULT_MATROID_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Mandatory, optional and forbidden edges with the component split.
    Thermal {
        #[command(flatten)]
        source: Source,
        /// Also write a Graphviz rendering to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Parity classes of alternating reachability.
    Dm {
        #[command(flatten)]
        source: Source,
    },
    /// Generating set by one route, or by all of them.
    GeneratingSet {
        #[command(flatten)]
        source: Source,
        /// Route name, or `all`.
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, default_value_t = szf_core::matching::DEFAULT_MATCHING_CAP)]
        cap: usize,
    },
    /// Classify one edge by adjacency ranks.
    RankClass {
        #[command(flatten)]
        source: Source,
        /// Edge as `u,v`.
        #[arg(long)]
        edge: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum MatroidCommand {
    /// Check the closure axioms on a family file.
    Verify {
        /// JSON file with `n`, `family` and optional `provenance`.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = szf_core::matroid::DEFAULT_MATROID_CAP)]
        cap: usize,
    },
    /// Minimal forcing sets against maximum-matching complements.
    Gammoid {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::matroid::DEFAULT_MATROID_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CompleteCommand {
    /// Whether every stalled set is realizable.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::completeness::DEFAULT_COMPLETENESS_CAP)]
        cap: usize,
    },
    /// Unique perfect matching test.
    Upm {
        #[command(flatten)]
        source: Source,
        /// Also compare with completeness (nonsingular graphs only).
        #[arg(long)]
        theorem: bool,
        #[arg(long, default_value_t = szf_core::completeness::DEFAULT_COMPLETENESS_CAP)]
        cap: usize,
    },
    /// Triangle blow-up of the graph.
    Gadget {
        #[command(flatten)]
        source: Source,
        /// Also report the SZF number of the blow-up and the zero forcing
        /// number of the input.
        #[arg(long)]
        numbers: bool,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_ENUM_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HyperCommand {
    /// Whether a set is stalled; the whole stalled family without --set.
    Stalled {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_HYPER_CAP)]
        cap: usize,
    },
    /// Every set derivable from the given one.
    Derived {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        set: SetArg,
        #[arg(long, default_value_t = szf_core::forcing::DEFAULT_HYPER_CAP)]
        cap: usize,
    },
    /// Minimal stalled covers of a linear hypertree with codimensions.
    Components {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::hypernull::DEFAULT_COVER_CAP)]
        cap: usize,
    },
    /// Construct a nullvector vanishing exactly on a stalled set, or check
    /// a given vector with --vector.
    Nullvector {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        /// Comma-separated rationals such as `1,0,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Components of the nullvariety of the complete hypergraph.
    CompleteReport {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Stalled sets against constructed nullvectors, subset by subset.
    Correspondence {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = szf_core::hypernull::DEFAULT_COVER_CAP)]
        cap: usize,
    },
}
