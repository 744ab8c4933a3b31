//! The JSON run configuration. Command-line flags are translated into the
//! same structure, so both entry points share one dispatcher.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use ymlab_core::quadrupole::{EnergyForm, DEFAULT_DELTA, DEFAULT_GRID};
use ymlab_core::spectral::{RadialFunction, DEFAULT_GRID as SPECTRAL_GRID};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommandName {
    #[serde(rename = "liealg verify")]
    LiealgVerify,
    #[serde(rename = "quadrupole energy")]
    QuadrupoleEnergy,
    #[serde(rename = "quadrupole minimize")]
    QuadrupoleMinimize,
    #[serde(rename = "quadrupole report")]
    QuadrupoleReport,
    #[serde(rename = "spectral count")]
    SpectralCount,
    #[serde(rename = "spectral heat-trace")]
    SpectralHeatTrace,
    #[serde(rename = "spectral bs-compare")]
    SpectralBsCompare,
    #[serde(rename = "spectral find-t0")]
    SpectralFindT0,
    #[serde(rename = "bounds report")]
    BoundsReport,
}

impl CommandName {
    pub const ALL: [CommandName; 9] = [
        Self::LiealgVerify,
        Self::QuadrupoleEnergy,
        Self::QuadrupoleMinimize,
        Self::QuadrupoleReport,
        Self::SpectralCount,
        Self::SpectralHeatTrace,
        Self::SpectralBsCompare,
        Self::SpectralFindT0,
        Self::BoundsReport,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LiealgVerify => "liealg verify",
            Self::QuadrupoleEnergy => "quadrupole energy",
            Self::QuadrupoleMinimize => "quadrupole minimize",
            Self::QuadrupoleReport => "quadrupole report",
            Self::SpectralCount => "spectral count",
            Self::SpectralHeatTrace => "spectral heat-trace",
            Self::SpectralBsCompare => "spectral bs-compare",
            Self::SpectralFindT0 => "spectral find-t0",
            Self::BoundsReport => "bounds report",
        }
    }

    /// File stem for reports written to the default output directory.
    pub fn slug(self) -> String {
        self.as_str().replace(' ', "-")
    }

    pub fn is_randomized(self) -> bool {
        self == Self::LiealgVerify
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandName,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub liealg: LiealgParams,
    #[serde(default)]
    pub quadrupole: QuadrupoleParams,
    #[serde(default)]
    pub spectral: SpectralParams,
    #[serde(default)]
    pub bounds: BoundsParams,
}

impl RunConfig {
    pub fn new(command: CommandName) -> Self {
        Self {
            command,
            seed: None,
            strict: false,
            output: OutputSpec::default(),
            liealg: LiealgParams::default(),
            quadrupole: QuadrupoleParams::default(),
            spectral: SpectralParams::default(),
            bounds: BoundsParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LiealgParams {
    pub algebra: String,
    pub n: usize,
    pub samples: usize,
    pub gamma_starts: usize,
    pub gamma_steps: usize,
}

impl Default for LiealgParams {
    fn default() -> Self {
        Self { algebra: "su2".into(), n: 4, samples: 10_000, gamma_starts: 64, gamma_steps: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadrupoleParams {
    pub l: i64,
    pub l_list: Vec<i64>,
    pub grid: usize,
    pub delta: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub energy_form: EnergyForm,
    pub profile: Option<PathBuf>,
    pub profile_out: Option<PathBuf>,
}

impl Default for QuadrupoleParams {
    fn default() -> Self {
        Self {
            l: 3,
            l_list: (1..=10).map(|k| 4 * k - 1).collect(),
            grid: DEFAULT_GRID,
            delta: DEFAULT_DELTA,
            max_iters: 200,
            tol: 1e-6,
            energy_form: EnergyForm::Squared,
            profile: None,
            profile_out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaugeParams {
    pub weyl: RadialFunction,
    pub curvature: RadialFunction,
    pub gamma1: f64,
    /// Number of equally spaced `t` values in `[0, 1]` for the monotonicity check.
    pub t_points: usize,
}

impl Default for GaugeParams {
    fn default() -> Self {
        Self {
            weyl: RadialFunction::constant(0.0),
            curvature: RadialFunction::constant(0.0),
            gamma1: 2.0 / 3f64.sqrt(),
            t_points: 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectralParams {
    pub potential: Option<RadialFunction>,
    /// Two-column `theta V` text file; overrides `potential`.
    pub potential_file: Option<PathBuf>,
    pub epsilon: Option<f64>,
    pub grid: usize,
    pub rank: u32,
    pub t: Vec<f64>,
    pub n_eigs: usize,
    pub gauge: GaugeParams,
}

impl Default for SpectralParams {
    fn default() -> Self {
        Self {
            potential: None,
            potential_file: None,
            epsilon: None,
            grid: SPECTRAL_GRID,
            rank: 1,
            t: vec![0.05, 0.1, 0.5, 1.0, 5.0],
            n_eigs: 10,
            gauge: GaugeParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundsParams {
    /// Catalog record name.
    pub record: String,
    /// JSON record file; overrides `record`.
    pub record_file: Option<PathBuf>,
    pub int_f2: Option<f64>,
    pub int_wf: f64,
    pub dim: usize,
    pub allow_external: bool,
}

impl Default for BoundsParams {
    fn default() -> Self {
        Self { record: "S4".into(), record_file: None, int_f2: None, int_wf: 0.0, dim: 3, allow_external: false }
    }
}
