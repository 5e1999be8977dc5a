//! The `auxwave` command line.
//!
//! Exit codes: 0 success, 1 a residual check failed, 2 usage error,
//! 3 numeric failure.

mod commands;
pub mod config;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{run_catalog, run_classical_sweep, run_pipeline, run_sample, run_verify_aux};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "auxwave", version, about = "Bernoulli auxiliary equations and travelling waves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect the twenty auxiliary-equation cases.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Residual check of one catalog case.
    VerifyAux(VerifyAuxArgs),
    /// Reduce, balance, derive, solve and verify.
    Pipeline(PipelineArgs),
    /// Sample an expression or composed solution to CSV.
    Sample(SampleArgs),
    /// Residuals of the classical constant-coefficient formulas over sign choices.
    ClassicalSweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        index: usize,
        #[arg(long)]
        json: bool,
    },
    /// All cases as JSON.
    Export {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivativeArg {
    Auto,
    Numeric,
}

#[derive(Debug, Args)]
pub struct VerifyAuxArgs {
    #[arg(long = "case")]
    pub case: usize,
    #[arg(long, default_value = "A=1,B=1,C=1,C1=1")]
    pub params: String,
    /// Defaults to an automatically chosen pole-free window.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    /// Window width for the automatic search.
    #[arg(long, default_value_t = 2.0)]
    pub width: f64,
    #[arg(long, default_value_t = 41)]
    pub npoints: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = DerivativeArg::Auto)]
    pub derivative: DerivativeArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PdeArg {
    #[value(name = "b-equation")]
    BEquation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OdeArg {
    Mechanical,
    #[value(alias = "paper-eq8")]
    Reported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Constant,
    Pointwise,
    Export,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[arg(long, value_enum, default_value_t = PdeArg::BEquation)]
    pub pde: PdeArg,
    #[arg(long, default_value = "-2", allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, required_unless_present = "aux_z")]
    pub aux_case: Option<usize>,
    /// Custom auxiliary equation: `P`, `Q` and its solution `z`.
    #[arg(long, requires_all = ["aux_q", "aux_z"], conflicts_with = "aux_case", allow_hyphen_values = true)]
    pub aux_p: Option<String>,
    #[arg(long, requires_all = ["aux_p", "aux_z"], allow_hyphen_values = true)]
    pub aux_q: Option<String>,
    #[arg(long, requires_all = ["aux_p", "aux_q"], allow_hyphen_values = true)]
    pub aux_z: Option<String>,
    #[arg(long, value_enum, default_value_t = OdeArg::Mechanical)]
    pub ode: OdeArg,
    #[arg(long, value_enum, default_value_t = StrategyArg::Constant)]
    pub strategy: StrategyArg,
    /// Overrides the balanced ansatz order.
    #[arg(long)]
    pub order: Option<u32>,
    /// Merged over `A=1,B=1,C=1,C1=1,mu=1`.
    #[arg(long)]
    pub params: Option<String>,
    /// Comma-separated unknowns; defaults to the coefficients and `c`.
    #[arg(long)]
    pub unknowns: Option<String>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 101)]
    pub npoints: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Default)]
pub struct SampleArgs {
    /// Flat `key = value` recipe; explicit flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, conflicts_with = "solution_file")]
    pub expr_file: Option<PathBuf>,
    #[arg(long)]
    pub solution_file: Option<PathBuf>,
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long)]
    pub npoints: Option<usize>,
    /// Sampling variable, `xi` by default.
    #[arg(long)]
    pub var: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 101)]
    pub npoints: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Catalog { action } => run_catalog(&action),
        Command::VerifyAux(a) => run_verify_aux(&a),
        Command::Pipeline(a) => run_pipeline(&a),
        Command::Sample(a) => run_sample(&a),
        Command::ClassicalSweep(a) => run_classical_sweep(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
