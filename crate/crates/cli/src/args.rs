use clap::{Args, Parser, Subcommand, ValueEnum};

/// Median sets, pairings, graph classes and consensus axioms on finite graphs.
///
/// A GRAPH argument is either a file in `n m` edge-list format or a
/// generator spec such as `cycle:6`, `kbip:2,3`, `hypercube:3`, `bn:4`,
/// `bhat:4`, `grid:3x4` or `tree:0,0,1`.
#[derive(Debug, Parser)]
#[command(name = "medcons", version)]
pub struct Cli {
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Bipartite, weakly modular, modular, median, Helly, bipartite Helly, meshed.
    Classify { graph: String },
    /// Median set and total distances of a profile.
    Median {
        graph: String,
        #[arg(long)]
        profile: String,
    },
    /// Unimodality, connected median sets and peaklessness in G^p over a profile budget.
    VerifyConnectedMedians {
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Perfect pairings, double pairings and local checks.
    #[command(subcommand)]
    Pairing(PairingVerb),
    /// Write B_n, its apex extension, incidence graphs and counterexamples.
    #[command(subcommand)]
    Construct(ConstructVerb),
    /// Tabulate consensus functions and check axioms.
    #[command(subcommand)]
    Consensus(ConsensusVerb),
    /// Build, embed and verify benzenoid graphs.
    #[command(subcommand)]
    Benzenoid(BenzenoidVerb),
    /// Run every entry of a TOML manifest.
    Corpus { manifest: String },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Largest support size.
    #[arg(long, default_value_t = 4)]
    pub support: usize,
    /// Largest multiplicity.
    #[arg(long, default_value_t = 2)]
    pub mult: u32,
    /// Refuse budgets that enumerate more profiles than this.
    #[arg(long, default_value_t = 2_000_000)]
    pub cap: u128,
}

#[derive(Debug, Subcommand)]
pub enum PairingVerb {
    /// Perfect pairing of one even profile.
    Check {
        graph: String,
        #[arg(long)]
        profile: String,
    },
    /// First even profile within the budget without a perfect pairing.
    Search {
        graph: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact double-pairing property via the polytopes Me(u) and Ma(u).
    Double {
        graph: String,
        #[arg(long, default_value_t = 1 << 20)]
        stable_cap: usize,
    },
    /// Matching-stable-set check on the local graph B_u.
    Local {
        graph: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Double)]
        variant: VariantArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 1 << 20)]
        stable_cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Single,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pairing,
    Double,
}

#[derive(Debug, Subcommand)]
pub enum ConstructVerb {
    /// K_{n,n} minus a perfect matching.
    Bn {
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// B_n with two adjacent apexes added.
    Bhat {
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Incidence graph of a hypergraph file (`n k` header, one hyperedge per line).
    Incidence {
        hypergraph: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Bipartite Helly graph without the (double-)pairing property.
    Counterexample {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConsensusVerb {
    /// Tabulate Med on every profile up to a length.
    TabulateMed {
        graph: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check one axiom (A, B, C, T, T-, T2, E<k>, or xinl) on Med or a table file.
    Check {
        graph: String,
        #[arg(long)]
        axiom: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Table in `profile | vertex-set` format; Med when absent.
        #[arg(long)]
        table: Option<String>,
    },
    /// Evaluate L6 on a hexagon profile, or verify it up to a length.
    L6 {
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Profiles where two consensus functions differ. Each side is a table
    /// file, `med`, or `l6` (hexagon only).
    Compare {
        graph: String,
        left: String,
        right: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BenzenoidVerb {
    /// Build the graph of a cell file (one `q r` axial coordinate per line).
    Build {
        cells: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Isometric embedding into a product of three trees.
    Embed { cells: String },
    /// Gatedness, interval and median lemmas over a profile budget.
    Verify {
        cells: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}
