mod commands;
mod output;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodom::exactnum::Rat;

use crate::output::{Failure, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "geodom", version, about = "Reductions to domination problems on geometric intersection graphs")]
struct Cli {
    /// Write a run manifest (inputs, parameters, outcome) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random (3,3)-CNF formula.
    Gen(GenArgs),
    /// Build a gadget graph and its exact geometric realization.
    Reduce(ReduceArgs),
    /// Check a scene's exact intersection graph against its expected graph.
    Verify(VerifyArgs),
    /// Solve a domination or Steiner problem on a graph.
    Solve(SolveArgs),
    /// Reduce, realize, verify and solve, then check the equivalence with SAT.
    Roundtrip(RoundtripArgs),
    /// Draw a cross-section of a scene as SVG.
    Render(RenderArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Dominating set in ball graphs.
    DsBall3d,
    /// Weighted dominating set in unit-ball graphs.
    WdsUnitball3d,
    /// Dominating set, connected dominating set and Steiner tree in fat-object graphs.
    SplitPlanar,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Scaled angles and a certified spacing.
    Certified,
    /// Literal angles i/n, spacing 1/(3tn²) and negated two-literal clause heights.
    Paper,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Ds,
    Wds,
    Cds,
    Steiner,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fail unless the output is a (3,3) formula.
    #[arg(long)]
    pub strict_33: bool,
    /// Output DIMACS path (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct WeightedArgs {
    #[arg(long, value_enum, default_value_t = Preset::Certified)]
    pub preset: Preset,
    /// Overrides the preset spacing (exact rational, e.g. 1/768).
    #[arg(long)]
    pub epsilon: Option<Rat>,
    #[arg(long)]
    pub angle_scale: Option<Rat>,
    #[arg(long)]
    pub margin: Option<Rat>,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// DIMACS input for the formula targets.
    #[arg(long)]
    pub cnf: Option<PathBuf>,
    /// Graph JSON input for the split-planar target.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub strict_33: bool,
    #[command(flatten)]
    pub weighted: WeightedArgs,
    /// Output Graph JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output Scene JSON path.
    #[arg(long)]
    pub out_scene: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub scene: PathBuf,
    /// Output report JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Problem::Ds)]
    pub problem: Problem,
    /// Budget: a vertex count, or an exact weight for `wds`.
    #[arg(long)]
    pub k: Option<Rat>,
    /// Comma-separated terminal labels for `steiner` (default: labels starting with `b_`).
    #[arg(long, value_delimiter = ',')]
    pub terminals: Option<Vec<String>>,
    /// Output result JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RoundtripArgs {
    #[arg(long, value_enum, default_value_t = Target::DsBall3d)]
    pub target: Target,
    /// DIMACS file, or a directory of `.cnf` files processed in parallel.
    #[arg(long)]
    pub cnf: Option<PathBuf>,
    /// Graph JSON for the split-planar target.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generate formulas with this many variables instead of reading one.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds to generate.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long)]
    pub strict_33: bool,
    #[command(flatten)]
    pub weighted: WeightedArgs,
    /// Remove this edge (`a,b`) from the expected graph before verifying.
    #[arg(long)]
    pub drop_edge: Option<String>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long)]
    pub scene: PathBuf,
    /// `x=<c>`, `y=<c>`, `z=<c>` or `planar`.
    #[arg(long)]
    pub plane: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Add a generation-time comment to the SVG.
    #[arg(long)]
    pub timestamp: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let mut manifest = RunManifest::default();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a, &mut manifest),
        Command::Reduce(a) => commands::reduce(a, &mut manifest),
        Command::Verify(a) => commands::verify(a, &mut manifest),
        Command::Solve(a) => commands::solve(a, &mut manifest),
        Command::Roundtrip(a) => commands::roundtrip(a, &mut manifest),
        Command::Render(a) => render::run(a, &mut manifest),
    };
    let code = match &result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    };
    if let Some(path) = &cli.manifest {
        manifest.finish(&result, started.elapsed());
        if let Err(e) = output::write_json(path, &manifest) {
            eprintln!("error: {e}");
            return ExitCode::from(Failure::from(e).exit_code());
        }
    }
    ExitCode::from(code)
}
