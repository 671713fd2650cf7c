//! Command-line front end for `implicitmat`.
//!
//! Every subcommand produces a [`RunReport`]; [`run`] turns argument lists
//! into a report plus an exit code so the binary stays a thin wrapper.

pub mod commands;
pub mod modelfile;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use implicitmat::{Error, Mode};

pub use modelfile::{Coordinate, LoadedModel, ModelFile};
pub use report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "implicitmat", version, about = "Implicit matrix representations, ray shooting and space-curve equations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Do not print the report on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel polynomials of an interpolation matrix.
    Implicitize(ImplicitizeArgs),
    /// Intersections of rays with a parametric surface patch.
    Rayshoot(RayshootArgs),
    /// Conical implicit surfaces of a curve, with verification.
    Spacecurve(SpacecurveArgs),
    /// Whether a point lies on the implicitized object.
    Membership(MembershipArgs),
    /// Named example objects with reference checks.
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// JSON model file.
    #[arg(long, conflicts_with = "cloud")]
    pub model: Option<PathBuf>,
    /// CSV point cloud, one point per line.
    #[arg(long)]
    pub cloud: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SupportArgs {
    /// Simplex support of this total degree.
    #[arg(long)]
    pub delta: Option<u32>,
    /// Support file: one monomial per line as exponents.
    #[arg(long)]
    pub support: Option<PathBuf>,
    /// Weighted support `w1,..,wn`; needs `--bound`.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,
    #[arg(long, requires = "weights")]
    pub bound: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Degree,
    Terms,
}

#[derive(Debug, Clone, Args)]
pub struct ImplicitizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub support: SupportArgs,
    #[arg(long, value_enum, default_value_t = CriterionArg::Degree)]
    pub criterion: CriterionArg,
}

#[derive(Debug, Clone, Args)]
pub struct RayshootArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub support: SupportArgs,
    /// `a1,b1;..;an,bn` for the ray `x_i = a_i*rho + b_i`.
    #[arg(long, allow_hyphen_values = true)]
    pub ray: String,
    /// `t1:lo,hi;t2:lo,hi`; defaults to the model's patch, else unbounded.
    #[arg(long, allow_hyphen_values = true)]
    pub patch: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Resultant,
    Interp,
}

#[derive(Debug, Clone, Args)]
pub struct SpacecurveArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub runs: usize,
    /// Random integer coordinates are drawn from `[-box, box]`.
    #[arg(long = "box", default_value_t = 10)]
    pub box_bound: i64,
    #[arg(long, value_enum, default_value_t = PathArg::Resultant)]
    pub path: PathArg,
    /// Support degree for the interpolation path.
    #[arg(long)]
    pub delta: Option<u32>,
    /// Fresh curve samples and ambient probes used for verification.
    #[arg(long, default_value_t = 100)]
    pub probes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct MembershipArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub support: SupportArgs,
    /// Comma-separated coordinates of the query point.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Fixture name, or `all`.
    pub name: String,
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) | Error::VariableMismatch(_) | Error::ModeMismatch(_) => EXIT_INPUT,
        Error::ValidationFailed(_) => EXIT_VALIDATION,
        _ => EXIT_DEGENERATE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let report = match commands::dispatch(&cli) {
        Ok(r) => r.seal(),
        Err(e) => {
            return Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let mut stderr = String::new();
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &json) {
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            };
        }
    }
    for w in &report.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    Outcome {
        code: if report.passed { EXIT_OK } else { EXIT_VALIDATION },
        stdout: if cli.global.quiet { String::new() } else { json },
        stderr,
    }
}
