//! Batch driver for the `ymlab` kernels.
//!
//! Every command is described by a [`config::RunConfig`], built either from
//! command-line flags or from a JSON file passed to `run --config`. Reports
//! are JSON (or CSV for tabular results) and contain no timestamps, so the
//! same configuration and seed give byte-identical output.
//!
//! Exit codes: `0` success, `1` a declared property failed, `2` a usage,
//! configuration or runtime error.

pub mod config;
pub mod dispatch;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use ymlab_core::spectral::RadialFunction;

use config::{CommandName, Format, RunConfig};
pub use dispatch::{dispatch, Outcome, Property};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "YMLAB_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ymlab_core::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(name = "ymlab", version, about = "Index and energy bounds for Yang–Mills connections and Einstein metrics")]
pub struct Cli {
    /// Print the JSON schema of the run configuration and exit.
    #[arg(long)]
    pub schema: bool,
    /// Treat warnings as failed properties.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Output file. Defaults to $YMLAB_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Option<Top>,
}

#[derive(Debug, Subcommand)]
pub enum Top {
    /// Lie-algebra-valued form identities.
    Liealg {
        #[command(subcommand)]
        cmd: LiealgCmd,
    },
    /// Quadrupole connections on S^4.
    Quadrupole {
        #[command(subcommand)]
        cmd: QuadrupoleCmd,
    },
    /// Radial spectral problems on the round S^4.
    Spectral {
        #[command(subcommand)]
        cmd: SpectralCmd,
    },
    /// Conformal invariants and bound evaluators.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Run a JSON configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum LiealgCmd {
    /// Randomised identity suite and gamma estimates.
    Verify(LiealgArgs),
}

#[derive(Debug, Args)]
pub struct LiealgArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value = "su2")]
    pub algebra: String,
    /// Base dimension.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 64)]
    pub gamma_starts: usize,
    #[arg(long, default_value_t = 200)]
    pub gamma_steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum QuadrupoleCmd {
    /// Energy of the test profile (or a profile file).
    Energy(QuadrupoleArgs),
    /// Minimise the energy starting from the test profile.
    Minimize(QuadrupoleArgs),
    /// Growth table over a list of l.
    Report(QuadrupoleArgs),
}

#[derive(Debug, Args)]
pub struct QuadrupoleArgs {
    #[arg(long, default_value_t = 3)]
    pub l: i64,
    /// Comma-separated odd values of l for `report`.
    #[arg(long, value_delimiter = ',')]
    pub l_list: Option<Vec<i64>>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Evaluate the (a2 + a1 a3) / G2 summand unsquared.
    #[arg(long)]
    pub literal: bool,
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub profile_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SpectralCmd {
    /// Count nonpositive eigenvalues and evaluate the counting bound.
    Count(SpectralArgs),
    /// Heat trace of the weighted problem.
    HeatTrace(SpectralArgs),
    /// Birman–Schwinger comparison.
    BsCompare(SpectralArgs),
    /// Root of the first conformal gauge eigenvalue.
    FindT0(GaugeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    Constant,
    GaussianBump,
    DoubleBump,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Value of the constant preset.
    #[arg(long)]
    pub value: Option<f64>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub center: f64,
    #[arg(long, default_value_t = 0.0)]
    pub floor: f64,
    /// Two-column `theta V` text file.
    #[arg(long)]
    pub potential: Option<PathBuf>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub rank: u32,
    /// Comma-separated times for `heat-trace`.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct GaugeArgs {
    /// Constant |W|.
    #[arg(long, default_value_t = 0.0)]
    pub weyl: f64,
    /// Constant |F|.
    #[arg(long, default_value_t = 0.0)]
    pub curvature: f64,
    #[arg(long)]
    pub gamma1: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 11)]
    pub t_points: usize,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCmd {
    /// Rho invariants, Betti, Einstein and Yang–Mills bounds for a record.
    Report(BoundsArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Catalog record: S4, CP2, S2xS2 or S3xS1.
    #[arg(long, default_value = "S4")]
    pub record: String,
    /// JSON record file.
    #[arg(long)]
    pub record_file: Option<PathBuf>,
    #[arg(long)]
    pub int_f2: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub int_wf: f64,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long)]
    pub allow_external: bool,
}

fn preset_function(a: &SpectralArgs) -> Result<Option<RadialFunction>, CliError> {
    let need = |name: &str, v: Option<f64>| v.ok_or_else(|| CliError::Config(format!("preset needs --{name}")));
    Ok(match a.preset {
        None => None,
        Some(Preset::Constant) => Some(RadialFunction::Constant { value: need("value", a.value)? }),
        Some(Preset::GaussianBump) => Some(RadialFunction::GaussianBump {
            amplitude: need("amplitude", a.amplitude)?,
            width: need("width", a.width)?,
            center: a.center,
            floor: a.floor,
        }),
        Some(Preset::DoubleBump) => Some(RadialFunction::DoubleBump {
            amplitude: need("amplitude", a.amplitude)?,
            width: need("width", a.width)?,
            floor: a.floor,
        }),
    })
}

fn quadrupole_config(command: CommandName, a: QuadrupoleArgs) -> RunConfig {
    let mut cfg = RunConfig::new(command);
    let q = &mut cfg.quadrupole;
    q.l = a.l;
    if let Some(v) = a.l_list {
        q.l_list = v;
    }
    if let Some(v) = a.grid {
        q.grid = v;
    }
    if let Some(v) = a.delta {
        q.delta = v;
    }
    if let Some(v) = a.max_iters {
        q.max_iters = v;
    }
    if let Some(v) = a.tol {
        q.tol = v;
    }
    if a.literal {
        q.energy_form = ymlab_core::quadrupole::EnergyForm::Literal;
    }
    q.profile = a.profile;
    q.profile_out = a.profile_out;
    cfg
}

fn spectral_config(command: CommandName, a: SpectralArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(command);
    cfg.spectral.potential = preset_function(&a)?;
    let s = &mut cfg.spectral;
    s.potential_file = a.potential;
    s.epsilon = a.epsilon;
    s.rank = a.rank;
    if let Some(g) = a.grid {
        s.grid = g;
    }
    if let Some(t) = a.t {
        s.t = t;
    }
    Ok(cfg)
}

/// Translates parsed flags into a run configuration.
pub fn config_from_cli(cli: Cli) -> Result<RunConfig, CliError> {
    let command = cli.command.ok_or_else(|| CliError::Config("no command given; see --help".into()))?;
    let mut cfg = match command {
        Top::Run { config } => {
            let text = std::fs::read_to_string(&config)?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?
        }
        Top::Liealg { cmd: LiealgCmd::Verify(a) } => {
            let mut cfg = RunConfig::new(CommandName::LiealgVerify);
            cfg.seed = Some(a.seed);
            cfg.liealg = config::LiealgParams {
                algebra: a.algebra,
                n: a.n,
                samples: a.samples,
                gamma_starts: a.gamma_starts,
                gamma_steps: a.gamma_steps,
            };
            cfg
        }
        Top::Quadrupole { cmd } => match cmd {
            QuadrupoleCmd::Energy(a) => quadrupole_config(CommandName::QuadrupoleEnergy, a),
            QuadrupoleCmd::Minimize(a) => quadrupole_config(CommandName::QuadrupoleMinimize, a),
            QuadrupoleCmd::Report(a) => quadrupole_config(CommandName::QuadrupoleReport, a),
        },
        Top::Spectral { cmd } => match cmd {
            SpectralCmd::Count(a) => spectral_config(CommandName::SpectralCount, a)?,
            SpectralCmd::HeatTrace(a) => spectral_config(CommandName::SpectralHeatTrace, a)?,
            SpectralCmd::BsCompare(a) => spectral_config(CommandName::SpectralBsCompare, a)?,
            SpectralCmd::FindT0(a) => {
                let mut cfg = RunConfig::new(CommandName::SpectralFindT0);
                let g = &mut cfg.spectral.gauge;
                g.weyl = RadialFunction::constant(a.weyl);
                g.curvature = RadialFunction::constant(a.curvature);
                if let Some(v) = a.gamma1 {
                    g.gamma1 = v;
                }
                g.t_points = a.t_points;
                if let Some(n) = a.grid {
                    cfg.spectral.grid = n;
                }
                cfg
            }
        },
        Top::Bounds { cmd: BoundsCmd::Report(a) } => {
            let mut cfg = RunConfig::new(CommandName::BoundsReport);
            cfg.bounds = config::BoundsParams {
                record: a.record,
                record_file: a.record_file,
                int_f2: a.int_f2,
                int_wf: a.int_wf,
                dim: a.dim,
                allow_external: a.allow_external,
            };
            cfg
        }
    };
    cfg.strict |= cli.strict;
    if let Some(out) = cli.out {
        cfg.output.path = Some(out);
    }
    if let Some(f) = cli.format {
        cfg.output.format = f;
    }
    Ok(cfg)
}

fn destination(cfg: &RunConfig) -> Option<PathBuf> {
    if let Some(p) = &cfg.output.path {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match cfg.output.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Some(Path::new(&dir).join(format!("{}.{ext}", cfg.command.slug())))
}

/// Serialises the outcome in the requested format.
pub fn render(cfg: &RunConfig, out: &Outcome) -> Result<String, CliError> {
    match cfg.output.format {
        Format::Json => Ok(serde_json::to_string_pretty(out)? + "\n"),
        Format::Csv => out
            .csv
            .clone()
            .ok_or_else(|| CliError::Config(format!("command {} has no CSV output", out.command))),
    }
}

/// Runs a configuration end to end and returns the exit code.
pub fn execute(cfg: &RunConfig) -> Result<i32, CliError> {
    let out = dispatch(cfg)?;
    let text = render(cfg, &out)?;
    match destination(cfg) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    for p in &out.properties {
        eprintln!("{} {}: {}", if p.passed { "PASS" } else { "FAIL" }, p.name, p.detail);
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    Ok(if out.all_passed() { EXIT_OK } else { EXIT_PROPERTY })
}

/// Entry point shared by the binary and the integration tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    if cli.schema {
        let text = serde_json::to_string_pretty(&schema::config_schema()).expect("schema serialises");
        return match writeln!(std::io::stdout(), "{text}") {
            Ok(()) => EXIT_OK,
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_ERROR
            }
        };
    }
    match config_from_cli(cli).and_then(|cfg| execute(&cfg)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
