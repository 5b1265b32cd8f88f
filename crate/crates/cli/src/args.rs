use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "trunclap", version, about = "Principal eigenvalue of the truncated Laplacian on planar convex domains")]
pub struct Cli {
    /// Worker threads for independent solves (default: available parallelism).
    #[arg(long, global = true, env = "TRUNCLAP_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for μ₁ and print the estimate as JSON.
    Solve(SolveArgs),
    /// Print diameter, perimeter, area and the closed-form bounds.
    Bounds(BoundsArgs),
    /// Run a pass/fail suite.
    Verify(VerifyArgs),
    /// Run an experiment and write its tables.
    Explore(ExploreArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Domain as a JSON file path or an inline JSON object.
    #[arg(long)]
    pub domain: String,
    /// Grid step; a comma-separated list with `--sweep` (default: diameter/128).
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<f64>,
    /// Stencil width W; a comma-separated list with `--sweep`.
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub stencil: Vec<usize>,
    /// Solve on every (h, W) pair and print a refinement table.
    #[arg(long)]
    pub sweep: bool,
    /// Add Richardson-extrapolated values to the sweep.
    #[arg(long, requires = "sweep")]
    pub richardson: bool,
    /// Use policy iteration for the inner solves.
    #[arg(long)]
    pub policy_iteration: bool,
    /// Solve numerically even when a closed form exists.
    #[arg(long)]
    pub force_numeric: bool,
    /// Write the eigenfunction as `x,y,u` CSV.
    #[arg(long, conflicts_with = "sweep")]
    pub dump_eigenfunction: Option<PathBuf>,
    /// Write the grid mask and arm lengths as CSV.
    #[arg(long, conflicts_with = "sweep")]
    pub dump_grid: Option<PathBuf>,
    /// Include wall-clock timings in the output.
    #[arg(long)]
    pub timings: bool,
    #[arg(long, default_value_t = 1e-6)]
    pub tol_bracket: f64,
    #[arg(long, default_value_t = 200)]
    pub max_outer: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Domain as a JSON file path or an inline JSON object.
    #[arg(long)]
    pub domain: String,
    /// Dimension used for the Jung floor.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Analytic,
    Inequalities,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    /// Grid step as a fraction of each domain's diameter.
    #[arg(long, default_value_t = 1.0 / 128.0)]
    pub h_rel: f64,
    #[arg(long, default_value_t = 4)]
    pub stencil: usize,
    /// Use pseudo-time marching instead of policy iteration.
    #[arg(long)]
    pub pseudo_time: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[command(subcommand)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConstraintArg {
    Volume,
    Perimeter,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ShapeArg {
    Rectangle,
    Triangle,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output directory for the CSV and JSON tables.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write `(x, y)` series files.
    #[arg(long)]
    pub plot_data: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Discretization {
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub h: f64,
    #[arg(long, default_value_t = 4)]
    pub stencil: usize,
    /// Use pseudo-time marching instead of policy iteration.
    #[arg(long)]
    pub pseudo_time: bool,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Closed-form values along degenerating rectangles.
    Rectangles {
        #[arg(long, value_enum, default_value = "volume")]
        constraint: ConstraintArg,
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        n: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Thin domains of fixed diameter.
    Shrinking {
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, value_delimiter = ',', default_value = "0.4,0.2,0.1")]
        eps: Vec<f64>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "rectangle,triangle")]
        shapes: Vec<ShapeArg>,
        #[command(flatten)]
        disc: Discretization,
        #[command(flatten)]
        common: Common,
    },
    /// Reuleaux polygons of fixed width.
    Reuleaux {
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,9")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        arc_samples: usize,
        #[command(flatten)]
        disc: Discretization,
        #[command(flatten)]
        common: Common,
    },
    /// Inscribed polygons of a disk and random perturbations.
    Hausdorff {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        n: Vec<usize>,
        /// Random perturbation trials of the inscribed octagon (0 skips them).
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Largest vertex displacement of the perturbations, relative to `r`.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[command(flatten)]
        disc: Discretization,
        #[command(flatten)]
        common: Common,
    },
}
