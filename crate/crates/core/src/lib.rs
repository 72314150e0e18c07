//! Distributed interferometric imaging via generalized Wirtinger flow.
//!
//! A network of receivers observes a common scene through a bistatic radar
//! geometry. Each pair of neighboring receivers shares cross-correlation
//! measurements of the scene's reflectivity, and every agent runs a local
//! gradient flow on the nonconvex phaseless objective while a graph
//! Laplacian penalty plus a dual variable drive the network to consensus.
//!
//! Module map:
//!
//! * [`scene`]: imaging geometry, waveform sampling, and the per-agent
//!   sampling matrices of the forward model.
//! * [`measurements`]: noiseless cross-correlation synthesis and complex
//!   Gaussian noise injection at a prescribed SNR.
//! * [`graph`]: undirected agent networks (small-world and complete),
//!   matrix-free Laplacian operators, and connectivity diagnostics.
//! * [`solver`]: spectral initialization, Wirtinger gradients, the
//!   distributed primal-dual iteration, and its centralized counterpart.
//! * [`theory`]: real lifting of the bilinear terms, Lipschitz bounds,
//!   restricted-isometry constants, and regularity/PL condition checks.
//! * [`metrics`]: phase-aligned error, consensus diagnostics, and simple
//!   convergence-rate fits.
//! * [`harness`]: experiment configuration, sweep drivers, and CSV output.

pub mod error;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod measurements;
pub mod metrics;
pub mod scene;
pub mod solver;
pub mod theory;

pub use error::{Error, Result};
