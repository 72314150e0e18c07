//! Imaging geometry and the per-agent forward model.
//!
//! A planar voxel grid is observed by one transmitter and a ring of
//! receivers. Each receiver correlates the returns it collects at a set of
//! uniformly spaced frequencies; the sampling vector of receiver `i` at
//! frequency `omega_s` has one entry per voxel,
//! `alpha_ik * exp(-i omega_s phi_ik)`, where `phi_ik` is the bistatic
//! propagation delay through voxel `k` and `alpha_ik` the two-leg free-space
//! attenuation scaled by the combined antenna gains. The frequency response
//! of the waveform is flat over the band.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Free-space propagation speed in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A point in 3-space, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Scene voxels, station positions, and the propagation speed.
#[derive(Debug, Clone)]
pub struct SceneGeometry {
    voxels: Vec<Position>,
    grid_shape: (usize, usize),
    transmitter: Position,
    receivers: Vec<Position>,
    c0: f64,
}

impl SceneGeometry {
    /// Validates that no voxel coincides with a station, which would make the
    /// attenuation singular.
    pub fn new(
        voxels: Vec<Position>,
        grid_shape: (usize, usize),
        transmitter: Position,
        receivers: Vec<Position>,
        c0: f64,
    ) -> Result<Self> {
        if voxels.is_empty() {
            return Err(Error::Empty("scene voxels"));
        }
        if receivers.is_empty() {
            return Err(Error::Empty("receivers"));
        }
        if grid_shape.0 * grid_shape.1 != voxels.len() {
            return Err(Error::DimensionMismatch {
                context: "grid shape vs voxel count",
                expected: grid_shape.0 * grid_shape.1,
                got: voxels.len(),
            });
        }
        if !(c0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "c0",
                reason: format!("propagation speed must be positive, got {c0}"),
            });
        }
        for (k, v) in voxels.iter().enumerate() {
            if v.distance(&transmitter) == 0.0 {
                return Err(Error::DegenerateGeometry {
                    voxel: k,
                    station: "transmitter",
                    x: v.x,
                    y: v.y,
                    z: v.z,
                });
            }
            if receivers.iter().any(|r| v.distance(r) == 0.0) {
                return Err(Error::DegenerateGeometry {
                    voxel: k,
                    station: "receiver",
                    x: v.x,
                    y: v.y,
                    z: v.z,
                });
            }
        }
        Ok(Self { voxels, grid_shape, transmitter, receivers, c0 })
    }

    /// Rectangular voxel grid in the z = 0 plane, centered at the origin,
    /// laid out row-major.
    pub fn planar_grid(rows: usize, cols: usize, spacing: f64) -> Vec<Position> {
        let y0 = -0.5 * spacing * (rows.saturating_sub(1) as f64);
        let x0 = -0.5 * spacing * (cols.saturating_sub(1) as f64);
        let mut voxels = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                voxels.push(Position::new(x0 + c as f64 * spacing, y0 + r as f64 * spacing, 0.0));
            }
        }
        voxels
    }

    /// `n` stations equally spaced on a circle of the given radius and height,
    /// centered above the origin, starting at angle zero.
    pub fn ring(n: usize, radius: f64, height: f64) -> Vec<Position> {
        (0..n)
            .map(|i| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Position::new(radius * theta.cos(), radius * theta.sin(), height)
            })
            .collect()
    }

    pub fn num_voxels(&self) -> usize {
        self.voxels.len()
    }

    pub fn num_receivers(&self) -> usize {
        self.receivers.len()
    }

    pub fn grid_shape(&self) -> (usize, usize) {
        self.grid_shape
    }

    pub fn voxel(&self, k: usize) -> &Position {
        &self.voxels[k]
    }

    pub fn receiver(&self, i: usize) -> &Position {
        &self.receivers[i]
    }

    pub fn transmitter(&self) -> &Position {
        &self.transmitter
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }
}

/// Transmit waveform band and antenna gains.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WaveformSpec {
    /// Carrier frequency in Hz.
    pub center_hz: f64,
    /// Two-sided bandwidth in Hz.
    pub bandwidth_hz: f64,
    /// Number of uniform frequency samples across the band.
    pub num_samples: usize,
    /// Transmit antenna gain in dB.
    pub tx_gain_db: f64,
    /// Receive antenna gain in dB.
    pub rx_gain_db: f64,
}

impl WaveformSpec {
    /// Uniform frequency samples over `[fc - bw/2, fc + bw/2]`, endpoints
    /// included. A single sample sits at the carrier.
    pub fn frequencies(&self) -> Vec<f64> {
        let s = self.num_samples;
        if s == 1 {
            return vec![self.center_hz];
        }
        let lo = self.center_hz - 0.5 * self.bandwidth_hz;
        let step = self.bandwidth_hz / (s - 1) as f64;
        (0..s).map(|idx| lo + idx as f64 * step).collect()
    }

    pub fn angular_frequencies(&self) -> Vec<f64> {
        self.frequencies().iter().map(|f| 2.0 * std::f64::consts::PI * f).collect()
    }

    /// Combined amplitude gain `10^((tx_db + rx_db)/20)`.
    pub fn amplitude_gain(&self) -> f64 {
        10f64.powf((self.tx_gain_db + self.rx_gain_db) / 20.0)
    }

    fn validate(&self) -> Result<()> {
        if self.num_samples == 0 {
            return Err(Error::InvalidParameter {
                name: "num_samples",
                reason: "at least one frequency sample is required".into(),
            });
        }
        if !(self.center_hz > 0.0) || self.bandwidth_hz < 0.0 {
            return Err(Error::InvalidParameter {
                name: "waveform band",
                reason: format!(
                    "need center_hz > 0 and bandwidth_hz >= 0, got {} and {}",
                    self.center_hz, self.bandwidth_hz
                ),
            });
        }
        Ok(())
    }
}

/// Two-way propagation delay from the transmitter through voxel `k` to
/// receiver `i`, in seconds.
pub fn bistatic_delay(geometry: &SceneGeometry, agent: usize, voxel: usize) -> f64 {
    let v = geometry.voxel(voxel);
    (v.distance(geometry.receiver(agent)) + v.distance(geometry.transmitter())) / geometry.c0()
}

/// Two-leg free-space amplitude attenuation for voxel `k` seen by receiver
/// `i`, including the combined antenna gains.
pub fn attenuation(geometry: &SceneGeometry, waveform: &WaveformSpec, agent: usize, voxel: usize) -> f64 {
    let v = geometry.voxel(voxel);
    let r_rx = v.distance(geometry.receiver(agent));
    let r_tx = v.distance(geometry.transmitter());
    waveform.amplitude_gain() / ((4.0 * std::f64::consts::PI * r_rx) * (4.0 * std::f64::consts::PI * r_tx))
}

/// Frequency-by-voxel sampling matrix of one agent, stored as split planes.
#[derive(Debug, Clone)]
pub struct SamplingMatrix {
    agent: usize,
    num_samples: usize,
    num_voxels: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl SamplingMatrix {
    /// Builds a matrix from explicit rows, one sampling vector per frequency.
    /// Intended for synthetic problems and tests; the radar path goes through
    /// [`build_sampling_matrix`].
    pub fn from_rows(agent: usize, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("sampling rows"));
        }
        let k = rows[0].len();
        if k == 0 {
            return Err(Error::Empty("sampling row entries"));
        }
        for row in &rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "sampling row lengths",
                    expected: k,
                    got: row.len(),
                });
            }
        }
        let mut re = Vec::with_capacity(rows.len() * k);
        let mut im = Vec::with_capacity(rows.len() * k);
        for row in &rows {
            for z in row {
                re.push(z.re);
                im.push(z.im);
            }
        }
        Ok(Self { agent, num_samples: rows.len(), num_voxels: k, re, im })
    }

    pub fn agent(&self) -> usize {
        self.agent
    }

    pub fn num_samples(&self) -> usize {
        self.num_samples
    }

    pub fn num_voxels(&self) -> usize {
        self.num_voxels
    }

    /// Split planes of the sampling vector at frequency index `s`.
    pub fn row_planes(&self, s: usize) -> (&[f64], &[f64]) {
        let lo = s * self.num_voxels;
        let hi = lo + self.num_voxels;
        (&self.re[lo..hi], &self.im[lo..hi])
    }

    pub fn entry(&self, s: usize, k: usize) -> Complex64 {
        assert!(s < self.num_samples && k < self.num_voxels);
        let idx = s * self.num_voxels + k;
        Complex64::new(self.re[idx], self.im[idx])
    }

    pub fn row_complex(&self, s: usize) -> Vec<Complex64> {
        let (re, im) = self.row_planes(s);
        re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
    }

    /// Euclidean norm of the sampling vector at frequency index `s`.
    pub fn row_norm(&self, s: usize) -> f64 {
        let (re, im) = self.row_planes(s);
        re.iter().zip(im).map(|(r, i)| r * r + i * i).sum::<f64>().sqrt()
    }
}

/// Builds the sampling matrix of one agent from the geometry and waveform.
pub fn build_sampling_matrix(
    geometry: &SceneGeometry,
    waveform: &WaveformSpec,
    agent: usize,
) -> Result<SamplingMatrix> {
    waveform.validate()?;
    if agent >= geometry.num_receivers() {
        return Err(Error::InvalidParameter {
            name: "agent",
            reason: format!("index {agent} out of range for {} receivers", geometry.num_receivers()),
        });
    }
    let k = geometry.num_voxels();
    let delays: Vec<f64> = (0..k).map(|v| bistatic_delay(geometry, agent, v)).collect();
    let gains: Vec<f64> = (0..k).map(|v| attenuation(geometry, waveform, agent, v)).collect();
    let omegas = waveform.angular_frequencies();
    let mut re = Vec::with_capacity(omegas.len() * k);
    let mut im = Vec::with_capacity(omegas.len() * k);
    for &w in &omegas {
        for v in 0..k {
            let phase = w * delays[v];
            let (sin, cos) = phase.sin_cos();
            re.push(gains[v] * cos);
            im.push(-gains[v] * sin);
        }
    }
    Ok(SamplingMatrix { agent, num_samples: omegas.len(), num_voxels: k, re, im })
}

/// Complex reflectivity over the voxel grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectivityImage {
    rows: usize,
    cols: usize,
    values: Vec<Complex64>,
}

impl ReflectivityImage {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, values: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    /// Places the given scatterers on an otherwise empty grid.
    pub fn point_scatterers(
        rows: usize,
        cols: usize,
        scatterers: &[(usize, usize, Complex64)],
    ) -> Result<Self> {
        let mut img = Self::zeros(rows, cols);
        for &(r, c, v) in scatterers {
            if r >= rows || c >= cols {
                return Err(Error::InvalidParameter {
                    name: "scatterer",
                    reason: format!("cell ({r}, {c}) outside a {rows}x{cols} grid"),
                });
            }
            img.values[r * cols + c] = v;
        }
        Ok(img)
    }

    pub fn from_values(rows: usize, cols: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "reflectivity values vs grid",
                expected: rows * cols,
                got: values.len(),
            });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.values[row * self.cols + col]
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}
