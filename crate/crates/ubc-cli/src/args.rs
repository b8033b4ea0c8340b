use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "ubc", version, about = "Connectivity of uncertain point sets: solve, approximate, verify, generate, render")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exact solver and the oracles (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact best-case optimum for points, pairs and segments.
    SolveExact(SolveExact),
    /// Center heuristic, cinch-up or worst-case center heuristic for disks.
    Approx(Approx),
    /// Brute-force ground truth.
    Oracle(Oracle),
    /// Whether some choice of pair points is connected at a given alpha.
    PairDecision(PairDecisionArgs),
    /// Reduction instance from a 3-CNF formula and a grid layout.
    GenGadget(GenGadget),
    /// Worst-case lower-bound instance of unit disks on a large circle.
    GenFlower(GenFlower),
    /// SVG drawing of an instance and an optional selection.
    Render(Render),
}

#[derive(Debug, Args)]
pub struct SolveExact {
    /// Instance JSON.
    pub input: PathBuf,
    /// Bisection tolerance on the edge length (default: scaled to the instance).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Geometric tolerance (default: scaled to the instance).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Search nodes allowed.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Largest number of pair branches.
    #[arg(long)]
    pub max_pair_branches: Option<u64>,
    /// Write the selection here as well.
    #[arg(long)]
    pub selection_out: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ApproxMethod {
    Center,
    Cinch,
    WcuCenter,
}

#[derive(Debug, Args)]
pub struct Approx {
    /// Instance JSON.
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub method: ApproxMethod,
    /// Write the selection here as well.
    #[arg(long)]
    pub selection_out: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleMode {
    Bcu,
    Wcu,
    PairDecision,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleKind {
    Lattice,
    Topology,
}

#[derive(Debug, Args)]
pub struct Oracle {
    /// Instance JSON.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "bcu")]
    pub mode: OracleMode,
    /// Lattice resolution per region.
    #[arg(long, default_value_t = 50)]
    pub grid: usize,
    /// Largest number of combinations (lattice) or tree programs (topology).
    #[arg(long)]
    pub budget: Option<u64>,
    /// Best-case method; the worst case always scans the lattice.
    #[arg(long, value_enum, default_value = "lattice")]
    pub method: OracleKind,
    /// Threshold for pair decisions.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Random trials for pair decisions; exhaustive when absent.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairDecisionArgs {
    /// Instance JSON.
    pub input: PathBuf,
    /// Radius to test.
    #[arg(long)]
    pub alpha: f64,
    /// Random trials; exhaustive when absent.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Pairs,
    Segments,
    Squares,
}

#[derive(Debug, Args)]
pub struct GenGadget {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Formula in DIMACS CNF.
    #[arg(long, requires = "layout", conflicts_with = "bundled")]
    pub formula: Option<PathBuf>,
    /// Layout JSON.
    #[arg(long, requires = "formula")]
    pub layout: Option<PathBuf>,
    /// Use a shipped formula and layout.
    #[arg(long)]
    pub bundled: Option<String>,
    /// Truth values as a string of 0/1 (or F/T); writes the encoding selection.
    #[arg(long, requires = "selection_out")]
    pub assignment: Option<String>,
    /// Selection JSON path for --assignment.
    #[arg(long)]
    pub selection_out: Option<PathBuf>,
    /// Instance JSON path.
    #[arg(long)]
    pub out: PathBuf,
    /// Role-tag JSON path (default: next to the instance with `.tags.json`).
    #[arg(long)]
    pub tags_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenFlower {
    /// Half the number of rim disks.
    #[arg(long)]
    pub n: Option<usize>,
    /// Distance between consecutive rim centers.
    #[arg(long)]
    pub spacing: f64,
    /// Chain spacing; defaults to (spacing - 2) / 20.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Circle radius (default: 200 * spacing unless --n is given).
    #[arg(long)]
    pub big_radius: Option<f64>,
    /// Emit the rim only.
    #[arg(long)]
    pub rim_only: bool,
    /// Instance JSON path.
    #[arg(long)]
    pub out: PathBuf,
    /// Write the distinguished selection here.
    #[arg(long)]
    pub selection_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Render {
    /// Instance JSON.
    pub input: PathBuf,
    /// Selection JSON; draws the points and their spanning tree.
    #[arg(long)]
    pub selection: Option<PathBuf>,
    /// Role-tag JSON written by gen-gadget, for gate and variable colors.
    #[arg(long)]
    pub tags: Option<PathBuf>,
    /// Shade a disk of this radius around every selected point.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Drawing width in pixels [default: 800].
    #[arg(long)]
    pub width: Option<f64>,
    /// SVG path.
    #[arg(long)]
    pub out: PathBuf,
}
