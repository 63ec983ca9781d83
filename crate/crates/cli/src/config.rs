//! Argument parsing, the JSON run-configuration schema, and the merge of
//! the two into one resolved run description.

use clap::{Args, Parser, Subcommand};
use qrabi::feasibility::PhysicalContext;
use qrabi::spectra::Grid;
use qrabi::ModelParams;
use serde::Deserialize;
use std::path::PathBuf;

/// A failed run, classified for the exit code.
pub enum Failure {
    /// Bad configuration, arguments, or I/O trouble (exit 2).
    Config(String),
    /// Numerical or convergence breakdown (exit 3).
    Numeric(String),
    /// The requested physical regime does not support the operation (exit 4).
    Regime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Regime(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Config(_) => "config",
            Failure::Numeric(_) => "numeric",
            Failure::Regime(_) => "regime",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numeric(m) | Failure::Regime(m) => m,
        }
    }
}

impl From<qrabi::Error> for Failure {
    fn from(e: qrabi::Error) -> Self {
        if e.is_regime() {
            Failure::Regime(e.to_string())
        } else if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

pub type CmdResult<T> = Result<T, Failure>;

#[derive(Parser)]
#[command(
    name = "qrabi",
    version,
    about = "Tunneling dynamics of a strongly coupled qubit-oscillator system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Exact and pair-ansatz energy levels as one table
    Spectrum(CommonArgs),
    /// Position-space projections of the lowest doublet states
    Wavefunctions(CommonArgs),
    /// Time evolution from the left-well state: densities and observables
    Dynamics(CommonArgs),
    /// Band potential, curvature reconstruction, and doublet counts
    Potential(PotentialArgs),
    /// Laboratory-unit tunneling estimates as a JSON report
    Feasibility(FeasibilityArgs),
    /// Emit the data behind one of the reference figures
    #[command(name = "reproduce-figure")]
    ReproduceFigure(ReproduceArgs),
}

#[derive(Args)]
pub struct CommonArgs {
    /// JSON run configuration (flags below override it)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Qubit gap Omega in units of the oscillator frequency
    #[arg(long)]
    pub omega: Option<f64>,
    /// Coupling lambda in units of the oscillator frequency
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Fock-space truncation; omit to auto-converge
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Output file (or directory for multi-file commands)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Number of eigenstates to reconstruct the potential from
    #[arg(long, default_value_t = 6)]
    pub states: usize,
    /// Density mask floor as a fraction of the peak density
    #[arg(long, default_value_t = 1e-4)]
    pub floor: f64,
}

#[derive(Args)]
pub struct FeasibilityArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Named device scenario; repeat for several
    /// (dilatational-3GHz, flexural-100MHz)
    #[arg(long)]
    pub preset: Vec<String>,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// Figure to reproduce: 1, 2, 3, 4, 5a, or 5b
    pub figure: String,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
}

// --- JSON configuration schema ---------------------------------------------

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Option<ModelConfig>,
    pub basis: Option<BasisConfig>,
    pub grid: Option<GridConfig>,
    pub times: Option<TimesConfig>,
    pub physical: Option<PhysicalConfig>,
    pub output: Option<OutputConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub omega_q: f64,
    pub coupling: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    pub n_max: Option<usize>,
    #[serde(default)]
    pub auto: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub q_min: f64,
    pub q_max: f64,
    pub points: usize,
}

#[derive(Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum TimeMode {
    /// Samples are fractions of the tunneling period 2 pi / delta-omega.
    PeriodFractions,
    /// Samples are times in units of the inverse oscillator frequency.
    Absolute,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimesConfig {
    pub mode: TimeMode,
    pub samples: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConfig {
    /// Oscillator angular frequency, rad/s.
    pub omega0: f64,
    /// Environment temperature, K.
    pub temperature: f64,
    pub quality_factor: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Option<String>,
    pub path: Option<PathBuf>,
}

// --- Resolution --------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub struct Times {
    pub mode: TimeMode,
    pub samples: Vec<f64>,
}

/// Everything a command needs, after merging defaults, config file, and
/// flag overrides.
pub struct Resolved {
    pub params: ModelParams,
    /// `None` means auto-converged basis selection.
    pub n_max: Option<usize>,
    pub grid: Grid,
    pub times: Times,
    pub physical: Option<PhysicalContext>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn parse_format(s: &str) -> CmdResult<Format> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(Failure::Config(format!(
            "unknown output format {other:?}; expected csv or json"
        ))),
    }
}

pub fn resolve(args: &CommonArgs) -> CmdResult<Resolved> {
    let cfg: RunConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                Failure::Config(format!("invalid config {}: {e}", path.display()))
            })?
        }
        None => RunConfig::default(),
    };

    let omega = args
        .omega
        .or(cfg.model.as_ref().map(|m| m.omega_q))
        .unwrap_or(3.0);
    let lambda = args
        .lambda
        .or(cfg.model.as_ref().map(|m| m.coupling))
        .unwrap_or(1.3);
    let params = ModelParams::new(omega, lambda)?;

    let n_max = match (&args.n_max, &cfg.basis) {
        (Some(n), _) => Some(*n),
        (None, Some(b)) => {
            if b.n_max.is_some() && b.auto {
                return Err(Failure::Config(
                    "basis: give n_max or auto, not both".into(),
                ));
            }
            b.n_max
        }
        (None, None) => None,
    };

    let grid = match &cfg.grid {
        Some(g) => Grid::new(g.q_min, g.q_max, g.points)?,
        None => Grid::default_position(),
    };

    let times = match &cfg.times {
        Some(t) => Times {
            mode: t.mode,
            samples: t.samples.clone(),
        },
        None => Times {
            mode: TimeMode::PeriodFractions,
            samples: (0..=200).map(|i| i as f64 / 200.0).collect(),
        },
    };

    let physical = match &cfg.physical {
        Some(p) => Some(PhysicalContext::new(
            p.omega0,
            p.temperature,
            p.quality_factor,
        )?),
        None => None,
    };

    let format = match (&args.format, &cfg.output) {
        (Some(s), _) => parse_format(s)?,
        (None, Some(o)) => match &o.format {
            Some(s) => parse_format(s)?,
            None => Format::Csv,
        },
        (None, None) => Format::Csv,
    };

    let out = args
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().and_then(|o| o.path.clone()));

    Ok(Resolved {
        params,
        n_max,
        grid,
        times,
        physical,
        format,
        out,
    })
}
