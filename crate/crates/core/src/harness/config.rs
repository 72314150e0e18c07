//! Experiment configuration: a TOML document whose defaults reproduce the
//! reference desk-scale setup (144-voxel grid, 35 receivers on a ring, 64
//! frequency samples, saturating step schedule). Unknown keys are
//! rejected so a typo cannot silently fall back to a default.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scene::{ReflectivityImage, WaveformSpec};
use crate::solver::SolverConfig;

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Master seed; every random stream (graph rewiring, noise) derives
    /// from it. The command line can override it.
    pub seed: u64,
    pub scene: SceneBlock,
    pub waveform: WaveformBlock,
    pub graph: GraphBlock,
    pub solver: SolverBlock,
    pub noise: NoiseBlock,
    pub sweep: SweepBlock,
    pub theory: TheoryBlock,
    pub output: OutputBlock,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SceneBlock {
    pub rows: usize,
    pub cols: usize,
    /// Voxel spacing in meters.
    pub spacing_m: f64,
    /// Radius of the receiver ring in meters.
    pub ring_radius_m: f64,
    /// Height of the receiver ring above the scene plane in meters.
    pub ring_height_m: f64,
    /// Transmitter position `[x, y, z]` in meters.
    pub tx_position: [f64; 3],
    pub scatterers: Vec<Scatterer>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scatterer {
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

impl Default for SceneBlock {
    fn default() -> Self {
        Self {
            rows: 12,
            cols: 12,
            spacing_m: 2.4,
            ring_radius_m: 6000.0,
            ring_height_m: 4000.0,
            tx_position: [0.0, 0.0, 8800.0],
            scatterers: vec![
                Scatterer { row: 2, col: 3, re: 1.0, im: 0.0 },
                Scatterer { row: 3, col: 8, re: 0.8, im: 0.3 },
                Scatterer { row: 6, col: 5, re: 0.9, im: -0.5 },
                Scatterer { row: 8, col: 2, re: 0.0, im: 0.9 },
                Scatterer { row: 9, col: 9, re: 0.7, im: 0.4 },
            ],
        }
    }
}

impl SceneBlock {
    pub fn truth_image(&self) -> Result<ReflectivityImage> {
        let points: Vec<(usize, usize, Complex64)> = self
            .scatterers
            .iter()
            .map(|s| (s.row, s.col, Complex64::new(s.re, s.im)))
            .collect();
        ReflectivityImage::point_scatterers(self.rows, self.cols, &points)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct WaveformBlock {
    pub center_hz: f64,
    pub bandwidth_hz: f64,
    pub num_samples: usize,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
}

impl Default for WaveformBlock {
    fn default() -> Self {
        Self {
            center_hz: 12.0e9,
            bandwidth_hz: 60.0e6,
            num_samples: 64,
            tx_gain_db: 100.0,
            rx_gain_db: 100.0,
        }
    }
}

impl WaveformBlock {
    pub fn to_spec(self) -> WaveformSpec {
        WaveformSpec {
            center_hz: self.center_hz,
            bandwidth_hz: self.bandwidth_hz,
            num_samples: self.num_samples,
            tx_gain_db: self.tx_gain_db,
            rx_gain_db: self.rx_gain_db,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct GraphBlock {
    pub num_agents: usize,
    /// Rewiring probability of the small-world topology.
    pub rewire_probability: f64,
    /// Ring-lattice degree before rewiring; must be even.
    pub base_degree: usize,
}

impl Default for GraphBlock {
    fn default() -> Self {
        Self { num_agents: 35, rewire_probability: 0.1, base_degree: 4 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SolverBlock {
    pub lambda1: f64,
    pub lambda2: f64,
    pub tau0: f64,
    pub eta_cap: f64,
    pub t_max: usize,
}

impl Default for SolverBlock {
    fn default() -> Self {
        let c = SolverConfig::default();
        Self {
            lambda1: c.lambda1,
            lambda2: c.lambda2,
            tau0: c.tau0,
            eta_cap: c.eta_cap,
            t_max: c.t_max,
        }
    }
}

impl SolverBlock {
    pub fn to_solver_config(self) -> SolverConfig {
        SolverConfig {
            lambda1: self.lambda1,
            lambda2: self.lambda2,
            tau0: self.tau0,
            eta_cap: self.eta_cap,
            t_max: self.t_max,
        }
    }
}

/// Signal-to-noise ratio: a level in dB, or the keyword `"none"` for
/// noiseless measurements.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum SnrField {
    Db(f64),
    Keyword(NoiseKeyword),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKeyword {
    None,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseBlock {
    pub snr_db: SnrField,
}

impl Default for NoiseBlock {
    fn default() -> Self {
        Self { snr_db: SnrField::Db(50.0) }
    }
}

impl NoiseBlock {
    /// The SNR in dB, or `None` when measurements stay noiseless.
    pub fn snr(&self) -> Option<f64> {
        match self.snr_db {
            SnrField::Db(v) if v.is_finite() => Some(v),
            _ => None,
        }
    }
}

/// Which experiment parameter a sweep varies.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    Connectivity,
    Receivers,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct SweepBlock {
    pub parameter: SweepParameter,
    /// Grid of sweep values; applies when `parameter` matches the sweep
    /// being run, otherwise the built-in grid for that sweep is used.
    pub values: Vec<f64>,
    pub seeds_per_point: usize,
    /// MSE level defining "converged" for iteration counting.
    pub mse_threshold: f64,
    /// Iteration budget for to-threshold runs.
    pub max_iterations: usize,
    /// Trace recording stride for sweep runs.
    pub record_stride: usize,
}

impl Default for SweepBlock {
    fn default() -> Self {
        Self {
            parameter: SweepParameter::Connectivity,
            values: (1..=10).map(|i| i as f64 / 10.0).collect(),
            seeds_per_point: 3,
            mse_threshold: 1e-5,
            max_iterations: 100_000,
            record_stride: 25,
        }
    }
}

impl SweepBlock {
    pub fn connectivity_values(&self) -> Vec<f64> {
        if self.parameter == SweepParameter::Connectivity {
            self.values.clone()
        } else {
            SweepBlock::default().values
        }
    }

    pub fn receiver_values(&self) -> Vec<usize> {
        if self.parameter == SweepParameter::Receivers {
            self.values.iter().map(|&v| v.round().max(1.0) as usize).collect()
        } else {
            (1..=8).map(|i| 5 * i).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct TheoryBlock {
    /// Side length of the square voxel grid of the downscaled instance.
    pub grid: usize,
    pub num_agents: usize,
    pub num_samples: usize,
    /// Bandwidth of the downscaled instance. Wider than the main waveform:
    /// with very few receivers the narrow band leaves the operator almost
    /// rank-deficient, and the landscape constants have no room to hold.
    pub bandwidth_hz: f64,
    /// Override for the isometry constant; when absent the empirical
    /// estimate (clamped to its valid range) is used.
    pub delta1: Option<f64>,
    /// Rank-one probe draws for the isometry estimate.
    pub trials: usize,
    /// Sampled points per inequality check.
    pub samples: usize,
}

impl Default for TheoryBlock {
    fn default() -> Self {
        Self {
            grid: 4,
            num_agents: 6,
            num_samples: 16,
            bandwidth_hz: 600.0e6,
            delta1: None,
            trials: 500,
            samples: 500,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    pub out_dir: String,
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self { out_dir: "out".into() }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, origin: &str) -> Result<Self> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.into(),
            reason: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.scene.rows == 0 || self.scene.cols == 0 {
            return Err(Error::Config("scene grid must be nonempty".into()));
        }
        if !(self.scene.spacing_m > 0.0) {
            return Err(Error::Config("voxel spacing must be positive".into()));
        }
        if self.scene.scatterers.is_empty() {
            return Err(Error::Config("scene needs at least one scatterer".into()));
        }
        for s in &self.scene.scatterers {
            if s.row >= self.scene.rows || s.col >= self.scene.cols {
                return Err(Error::Config(format!(
                    "scatterer at ({}, {}) lies outside the {}x{} grid",
                    s.row, s.col, self.scene.rows, self.scene.cols
                )));
            }
        }
        if self.graph.num_agents < 2 {
            return Err(Error::Config("need at least two agents".into()));
        }
        if !(0.0..=1.0).contains(&self.graph.rewire_probability) {
            return Err(Error::Config("rewire probability must lie in [0, 1]".into()));
        }
        if self.graph.base_degree == 0 || self.graph.base_degree % 2 != 0 {
            return Err(Error::Config("base degree must be even and positive".into()));
        }
        if let SnrField::Db(v) = self.noise.snr_db {
            if v.is_nan() {
                return Err(Error::Config("snr_db must be a number or \"none\"".into()));
            }
        }
        if self.sweep.values.is_empty() || self.sweep.seeds_per_point == 0 {
            return Err(Error::Config("sweep needs values and at least one seed".into()));
        }
        if self.sweep.parameter == SweepParameter::Connectivity {
            if self.sweep.values.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::Config("connectivity values must lie in [0, 1]".into()));
            }
        }
        if !(self.sweep.mse_threshold > 0.0) {
            return Err(Error::Config("mse threshold must be positive".into()));
        }
        if self.theory.grid == 0 || self.theory.num_agents < 2 || self.theory.num_samples == 0 {
            return Err(Error::Config("theory instance dimensions must be positive".into()));
        }
        if let Some(d) = self.theory.delta1 {
            if !(0.0..=crate::theory::DELTA1_MAX).contains(&d) {
                return Err(Error::Config(format!(
                    "theory delta1 override must lie in [0, {}]",
                    crate::theory::DELTA1_MAX
                )));
            }
        }
        self.solver.to_solver_config().validate()?;
        Ok(())
    }
}
