//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes surfaced by the imaging pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A scene voxel coincides with a transmitter or receiver position, so
    /// the propagation attenuation is undefined.
    #[error("voxel {voxel} coincides with {station} at ({x:.3}, {y:.3}, {z:.3})")]
    DegenerateGeometry {
        voxel: usize,
        station: &'static str,
        x: f64,
        y: f64,
        z: f64,
    },

    /// Inputs whose dimensions must agree did not.
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// A parameter value outside its documented domain.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Graph construction kept producing disconnected samples.
    #[error("no connected graph after {attempts} rewiring attempts (n = {nodes}, p = {p})")]
    Disconnected { attempts: usize, nodes: usize, p: f64 },

    /// An agent without neighbors has no measurements and no local objective.
    #[error("agent {agent} has no neighbors")]
    IsolatedAgent { agent: usize },

    /// A measurement set or operand required to be nonempty was empty.
    #[error("empty input: {0}")]
    Empty(&'static str),

    /// Power iteration failed to reach the requested tolerance.
    #[error("power iteration stalled after {iterations} iterations (relative residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// The iteration normalizer ||x0|| vanished, so step sizes are undefined.
    #[error("spectral initialization produced a zero vector; step normalizer undefined")]
    ZeroInitialization,

    /// A solver state stopped being finite.
    #[error("solver diverged at iteration {iteration} (non-finite state)")]
    Diverged { iteration: usize },

    /// Malformed on-disk data.
    #[error("parse error in {path}: {reason}")]
    Parse { path: String, reason: String },

    /// Configuration file rejected by the TOML deserializer.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
