//! Turns a configuration into a concrete problem instance: geometry,
//! per-agent sampling matrices, agent graph, and (optionally noisy)
//! measurements. All randomness fans out from one master seed in a fixed
//! order, so a given configuration and seed always build the same instance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::AgentGraph;
use crate::measurements::{add_noise, synthesize_measurements};
use crate::scene::{
    build_sampling_matrix, ReflectivityImage, SceneGeometry, WaveformSpec, SPEED_OF_LIGHT,
};
use crate::solver::Problem;

use super::config::ExperimentConfig;

/// Derived seeds, in the fixed order they are drawn from the master seed.
#[derive(Debug, Clone, Copy)]
pub struct SubSeeds {
    pub graph: u64,
    pub noise: u64,
}

impl SubSeeds {
    pub fn fan_out(master: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master);
        let graph = rng.gen();
        let noise = rng.gen();
        Self { graph, noise }
    }
}

/// Graph topology for an assembled instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Topology {
    /// Small-world graph with the configured rewiring probability.
    SmallWorld,
    /// Small-world graph with an explicit rewiring probability.
    SmallWorldWith(f64),
    /// Every pair of agents connected.
    Complete,
}

/// A fully built problem instance plus the pieces needed for reporting.
pub struct Assembled {
    pub geometry: SceneGeometry,
    pub waveform: WaveformSpec,
    pub truth_image: ReflectivityImage,
    pub truth: Vec<Complex64>,
    pub problem: Problem,
    pub seeds: SubSeeds,
}

impl Assembled {
    pub fn num_agents(&self) -> usize {
        self.problem.graph().num_agents()
    }
}

/// Builds the instance described by `config` with its configured agent
/// count and topology.
pub fn assemble(config: &ExperimentConfig, master_seed: u64) -> Result<Assembled> {
    assemble_with(config, master_seed, config.graph.num_agents, Topology::SmallWorld)
}

/// Builds an instance with an overridden agent count or topology; the
/// receiver ring is resized to match `num_agents`.
pub fn assemble_with(
    config: &ExperimentConfig,
    master_seed: u64,
    num_agents: usize,
    topology: Topology,
) -> Result<Assembled> {
    let seeds = SubSeeds::fan_out(master_seed);
    let scene = &config.scene;
    let voxels = SceneGeometry::planar_grid(scene.rows, scene.cols, scene.spacing_m);
    let receivers = SceneGeometry::ring(num_agents, scene.ring_radius_m, scene.ring_height_m);
    let [tx, ty, tz] = scene.tx_position;
    let geometry = SceneGeometry::new(
        voxels,
        (scene.rows, scene.cols),
        crate::scene::Position::new(tx, ty, tz),
        receivers,
        SPEED_OF_LIGHT,
    )?;
    let waveform = config.waveform.to_spec();
    let sampling = (0..num_agents)
        .map(|agent| build_sampling_matrix(&geometry, &waveform, agent))
        .collect::<Result<Vec<_>>>()?;

    let graph = match topology {
        Topology::SmallWorld => AgentGraph::small_world(
            num_agents,
            config.graph.rewire_probability,
            config.graph.base_degree,
            seeds.graph,
        )?,
        Topology::SmallWorldWith(p) => {
            AgentGraph::small_world(num_agents, p, config.graph.base_degree, seeds.graph)?
        }
        Topology::Complete => AgentGraph::complete(num_agents)?,
    };

    let truth_image = scene.truth_image()?;
    let clean = synthesize_measurements(&sampling, &graph, &truth_image)?;
    let measurements = match config.noise.snr() {
        Some(snr_db) => add_noise(&clean, snr_db, seeds.noise)?,
        None => clean,
    };

    let truth = truth_image.as_slice().to_vec();
    let problem = Problem::new(sampling, graph, measurements)?;
    Ok(Assembled { geometry, waveform, truth_image, truth, problem, seeds })
}
