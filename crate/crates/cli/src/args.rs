use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Serialize, Debug, Clone)]
#[command(name = "spindle", version, about = "One-term distributive homology of finite shelves and spindles")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Table,
}

/// Where the operation comes from. Exactly one source is required.
#[derive(Args, Serialize, Debug, Clone, Default)]
#[command(group(ArgGroup::new("source").multiple(false)))]
pub struct InputArgs {
    /// Operation table file, JSON {"size", "table"} or CSV.
    #[arg(long, group = "source")]
    pub table: Option<PathBuf>,
    /// Labels in the table file and in element arguments start at 1.
    #[arg(long)]
    pub one_based: bool,
    /// f-spindle from 1-based values of f, e.g. "2,1,1".
    #[arg(long, group = "source")]
    pub fspindle: Option<String>,
    /// f-spindle from a JSON file {"f": [...]}.
    #[arg(long, group = "source")]
    pub fspindle_file: Option<PathBuf>,
    /// f-spindle of sigma_{k,r}, given as "k,r".
    #[arg(long, group = "source")]
    pub sigma: Option<String>,
    /// Block spindle of sigma blocks "k1,r1;k2,r2;..." plus a singleton block.
    #[arg(long, group = "source")]
    pub blocks: Option<String>,
    /// Block spindle from block functions "f1;f2;..." (1-based within each block) plus a singleton block.
    #[arg(long, group = "source")]
    pub block_fns: Option<String>,
    /// Block spindle from a JSON file {"blocks": [...], "add_singleton_block": bool}.
    #[arg(long, group = "source")]
    pub blocks_file: Option<PathBuf>,
    /// Dihedral quandle x ▷ y = 2y - x mod n.
    #[arg(long, group = "source")]
    pub dihedral: Option<usize>,
    /// Trivial spindle x ▷ y = y on n elements.
    #[arg(long, group = "source")]
    pub trivial: Option<usize>,
}

#[derive(Args, Serialize, Debug, Clone, Default)]
pub struct BudgetArgs {
    /// Cap on the estimated number of boundary entries.
    #[arg(long, env = "SPINDLE_MAX_ENTRIES")]
    pub max_entries: Option<u64>,
    /// Cap on stored entries during Smith normal form elimination.
    #[arg(long, env = "SPINDLE_SNF_MAX_ENTRIES")]
    pub snf_max_entries: Option<usize>,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Full,
    Augmented,
    Reduced,
    Normalized,
    Degenerate,
    Bending,
    Relative,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct VariantArgs {
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    pub variant: VariantArg,
    /// Basepoint for the reduced and b-ending complexes; defaults to the
    /// f-spindle basepoint when there is one, else the first element.
    #[arg(long)]
    pub basepoint: Option<usize>,
    /// Subspindle for the relative complex, e.g. "1,2,3".
    #[arg(long)]
    pub subset: Option<String>,
    /// b-ending complex without the tuple (b); relative complex of normalized chains.
    #[arg(long)]
    pub reduced: bool,
    /// Relative complex built from normalized chains.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(ValueEnum, Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FormArg {
    H1,
    Normalized,
    Full,
    Bending,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check the shelf and spindle axioms.
    Validate {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        /// Also require idempotency for a zero exit status.
        #[arg(long)]
        spindle: bool,
    },
    /// Homology groups by Smith normal form.
    Homology {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        #[command(flatten)]
        #[serde(flatten)]
        variant: VariantArgs,
        /// Inclusive degree range "a..b" (or a single degree).
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
    /// Evaluate a closed form for an f-spindle (or H_1 of a block spindle).
    ClosedForm {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = FormArg::Full)]
        form: FormArg,
        #[arg(long, default_value = "0..2")]
        degrees: String,
    },
    /// Compare closed forms with Smith normal form results.
    Crosscheck {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        /// Check every f with |X0| from 1 up to this size instead of one input.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value = "0..3")]
        degrees: String,
    },
    /// Check splitting, decomposition and recursion identities.
    Identities {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "0..3")]
        degrees: String,
    },
    /// Test the growth conjectures.
    Conjectures {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        /// Sweep every spindle of this size up to isomorphism instead of one input.
        #[arg(long)]
        all_of_size: Option<usize>,
        /// Highest degree computed; defaults to max(|X|, 4) within the degree cap.
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// List all spindles (or shelves) of a given size.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        up_to_iso: bool,
        /// Enumerate shelves instead of spindles.
        #[arg(long)]
        shelves: bool,
    },
    /// Look for a right-permutation subset and verify acyclicity.
    Acyclicity {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        /// Use this subset instead of searching, e.g. "0,1,2".
        #[arg(long)]
        witness: Option<String>,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Print a boundary matrix in matrix-market text form.
    ExportMatrix {
        #[command(flatten)]
        #[serde(flatten)]
        input: InputArgs,
        #[command(flatten)]
        #[serde(flatten)]
        variant: VariantArgs,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        #[serde(flatten)]
        budget: BudgetArgs,
    },
}
