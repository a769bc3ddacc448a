//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "opuc", version, about = "Orthogonal polynomials on the unit circle from prescribed zeros")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Verblunsky coefficients of a zero schedule as CSV (`n,re,im,modulus`).
    Synth(SynthArgs),
    /// Zeros of `Phi_n` as CSV (`n,j,re,im,modulus,residual`) with optional SVG.
    Zeros(ZerosArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Row denominators `q_{n,2}` with the fitted rate and radius.
    Pade(PadeArgs),
    /// Zeros of the Chebyshev-arc polynomial of degree `n`.
    Arc(ArcArgs),
    /// Rerun a manifest and compare its outputs byte for byte.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Default, Args)]
#[group(multiple = false)]
pub struct ScheduleArgs {
    /// Periodic zeros `z1,z2,...`.
    #[arg(long, visible_alias = "alphas", value_name = "Z1,Z2,...", allow_hyphen_values = true)]
    pub periodic: Option<String>,
    /// Period-three zeros `r e^{2 pi i/3}, r e^{-2 pi i/3}, r`.
    #[arg(long, visible_alias = "r", value_name = "R")]
    pub periodic3: Option<String>,
    /// The same zero at every step.
    #[arg(long, value_name = "Z", allow_hyphen_values = true)]
    pub constant: Option<String>,
    /// A finite list of zeros.
    #[arg(long, value_name = "Z1,Z2,...", allow_hyphen_values = true)]
    pub explicit: Option<String>,
    /// `constant:Z`, `periodic:Z1,...`, `periodic3:R` or `explicit:Z1,...`.
    #[arg(long, value_name = "KIND:VALUES", allow_hyphen_values = true)]
    pub schedule: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    pub bits: u32,
    /// Seed for root-finder starting points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the run manifest (or suite report) here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Number of coefficients; defaults to the length of an explicit schedule.
    #[arg(long)]
    pub n: Option<usize>,
    /// CSV destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Period2,
    Period3,
    Nevai,
    Pade,
    Arc,
    Identities,
}

impl Suite {
    pub fn label(&self) -> &'static str {
        match self {
            Suite::Period2 => "period2",
            Suite::Period3 => "period3",
            Suite::Nevai => "nevai",
            Suite::Pade => "pade",
            Suite::Arc => "arc",
            Suite::Identities => "identities",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Degree, or a comma-separated list for `arc` and `pade`.
    #[arg(long, value_name = "N[,N...]")]
    pub n: Option<String>,
    /// Degrees for the `nevai` suite.
    #[arg(long, value_name = "N,N,...", default_value = "25,50,75,100")]
    pub grid: String,
    /// Arc opening for the `arc` suite; radians or `xpi`.
    #[arg(long, default_value = "0.5pi", allow_hyphen_values = true)]
    pub alpha: String,
    /// Target angle for the `arc` suite; radians or `xpi`.
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    pub theta0: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PadeArgs {
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[arg(long, default_value_t = 20)]
    pub n_min: usize,
    #[arg(long, default_value_t = 60)]
    pub n_max: usize,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ArcArgs {
    /// Arc opening; radians or `xpi`.
    #[arg(long, default_value = "0.5pi", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Synth(_) => "synth",
            Command::Zeros(_) => "zeros",
            Command::Verify(_) => "verify",
            Command::Pade(_) => "pade",
            Command::Arc(_) => "arc",
            Command::Replay(_) => "replay",
        }
    }

    /// Output file slots by kind, for redirection during replay.
    pub fn outputs_mut(&mut self) -> Vec<(&'static str, &mut Option<PathBuf>)> {
        match self {
            Command::Synth(a) => vec![("csv", &mut a.csv), ("json", &mut a.common.json)],
            Command::Zeros(a) => vec![("csv", &mut a.csv), ("svg", &mut a.svg), ("json", &mut a.common.json)],
            Command::Verify(a) => vec![("json", &mut a.common.json)],
            Command::Pade(a) => vec![("csv", &mut a.csv), ("json", &mut a.common.json)],
            Command::Arc(a) => vec![("csv", &mut a.csv), ("svg", &mut a.svg), ("json", &mut a.common.json)],
            Command::Replay(_) => Vec::new(),
        }
    }
}
