use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "addstruct", version, about = "Exact computations on sets of integers with small doubling")]
pub struct Cli {
    /// Cap on worker threads for parallel searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// A+B, A-B, hA or lA-mA.
    Sumset(SumsetArgs),
    /// |A+A|/|A| (or |A-A|/|A| with --minus).
    Doubling(DoublingArgs),
    /// Additive energy of A.
    Energy(EnergyArgs),
    /// Check one of the covering lemmas on a set.
    Cover(CoverArgs),
    /// Freiman isomorphism checks.
    Freiman {
        #[command(subcommand)]
        command: FreimanCommand,
    },
    /// Bohr sets and progressions inside them.
    Bohr {
        #[command(subcommand)]
        command: BohrCommand,
    },
    /// Norms of a function on [N].
    Norms(NormsArgs),
    /// Experiments on discretised tori.
    Torus {
        #[command(subcommand)]
        command: TorusCommand,
    },
    /// Classify a set as expanding, AP-dense, GAP-dense or inconclusive.
    Analyze(AnalyzeArgs),
    /// Re-check a JSON report against its input.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SumsetArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Second summand (defaults to A itself).
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Subtract instead of add.
    #[arg(long)]
    pub minus: bool,
    /// Compute hA.
    #[arg(long, conflicts_with_all = ["b", "minus", "signed"])]
    pub iterate: Option<u32>,
    /// Compute lA - mA, given as `l,m`.
    #[arg(long, conflicts_with_all = ["b", "minus"])]
    pub signed: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DoublingArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub minus: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    Lev,
    #[value(name = "5x4")]
    FiveFour,
    #[value(name = "9x8")]
    NineEight,
    #[value(name = "41x40")]
    FortyOneForty,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub lemma: Lemma,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// The progression Q for 41x40, as JSON {a0, a1, a2, L1, L2}.
    #[arg(long)]
    pub q: Option<PathBuf>,
    /// The progression P for 5x4 as `first,step,len`; defaults to the
    /// interval [1, max X] (or [min X, max X] when min X < 1).
    #[arg(long)]
    pub p: Option<String>,
    /// Record failed preconditions instead of refusing to run.
    #[arg(long)]
    pub no_precheck: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum FreimanCommand {
    /// Check that a map A -> B is a Freiman k-isomorphism.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Lines `x y` mapping each x in A to y in B.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = addstruct::freiman::DEFAULT_TUPLE_BUDGET)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BohrArgs {
    /// Rational frequency `u/v`.
    #[arg(long, required_unless_present = "cf", conflicts_with = "cf")]
    pub alpha: Option<String>,
    /// Continued fraction terms `a0,a1,...`.
    #[arg(long)]
    pub cf: Option<String>,
    #[arg(long)]
    pub sigma: String,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum BohrCommand {
    /// Enumerate the Bohr set.
    Set(BohrArgs),
    /// Extract a certified proper progression of dimension at most two.
    Extract {
        #[command(flatten)]
        bohr: BohrArgs,
        /// Skip the sigma N >= 400 precondition and the size guarantee.
        #[arg(long)]
        unchecked: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L2,
    U2,
    U2fft,
}

#[derive(Args, Debug)]
pub struct NormsArgs {
    /// One value f(1), f(2), ... per line.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub which: Norm,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum TorusCommand {
    /// Random superlevel-set measure checks for 1_{S1} * 1_{S2}.
    Kneser {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        /// A fixed height, or `random` for a per-trial height.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Lipschitz functions below and above the indicator of an arc.
    Sandwich {
        #[arg(long)]
        center: f64,
        #[arg(long)]
        halfwidth: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: String,
    #[arg(long)]
    pub eps: String,
    #[arg(long)]
    pub min_frac: String,
    /// Largest side length in the two-dimensional search.
    #[arg(long, default_value_t = 16)]
    pub max_l: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A JSON report produced by another subcommand.
    #[arg(long)]
    pub report: PathBuf,
    /// The input set the report was computed from.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}
