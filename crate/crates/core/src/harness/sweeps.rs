//! Parameter sweeps: convergence speed versus graph connectivity, and
//! reconstruction error versus network size. Each sweep point is repeated
//! over several seeds and summarized by medians.
//!
//! Seed handling: the sweep draws one run seed per repetition from the
//! master seed, then reuses that run seed at every sweep value. The
//! complete-graph centralized baseline depends only on the run seed, so
//! it is computed once per repetition and shared across sweep values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::metrics::median;
use crate::solver::{run_dgwf, run_gwf, RunOptions, SolverConfig};

use super::config::ExperimentConfig;
use super::instance::{assemble_with, Topology};

/// Which solver produced a sweep run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Dgwf,
    Gwf,
    GwfComplete,
}

impl SolverKind {
    pub fn label(self) -> &'static str {
        match self {
            SolverKind::Dgwf => "dgwf",
            SolverKind::Gwf => "gwf",
            SolverKind::GwfComplete => "gwf-complete",
        }
    }
}

/// One run of the connectivity sweep.
#[derive(Debug, Clone, Copy)]
pub struct ConnectivityRun {
    pub rewire_probability: f64,
    pub seed_index: usize,
    pub solver: SolverKind,
    /// Iterations until the mean-estimate MSE first reached the threshold,
    /// when it did within the budget.
    pub iterations_to_threshold: Option<usize>,
    pub final_mse: f64,
    pub final_consensus: f64,
}

/// Median iteration counts at one connectivity value.
#[derive(Debug, Clone, Copy)]
pub struct ConnectivityPoint {
    pub rewire_probability: f64,
    pub dgwf_median_iterations: Option<f64>,
    pub gwf_complete_median_iterations: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ConnectivitySweep {
    pub threshold: f64,
    pub runs: Vec<ConnectivityRun>,
    pub baseline: Vec<ConnectivityRun>,
    pub points: Vec<ConnectivityPoint>,
}

/// One run of the network-size sweep.
#[derive(Debug, Clone, Copy)]
pub struct ReceiverRun {
    pub num_agents: usize,
    pub seed_index: usize,
    pub solver: SolverKind,
    pub final_mse: f64,
    pub final_consensus: f64,
}

/// Median final errors at one network size.
#[derive(Debug, Clone, Copy)]
pub struct ReceiverPoint {
    pub num_agents: usize,
    pub dgwf_median_mse: Option<f64>,
    pub gwf_median_mse: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ReceiverSweep {
    pub t_max: usize,
    pub runs: Vec<ReceiverRun>,
    pub points: Vec<ReceiverPoint>,
}

fn run_seeds(master_seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    (0..count).map(|_| rng.gen()).collect()
}

/// Median of iteration counts where a missed budget counts as infinite;
/// an infinite median reads as "not reached".
fn median_iterations(counts: &[Option<usize>]) -> Option<f64> {
    let values: Vec<f64> =
        counts.iter().map(|c| c.map_or(f64::INFINITY, |v| v as f64)).collect();
    median(&values).filter(|m| m.is_finite())
}

/// Measures how many iterations the distributed solver needs to push the
/// network-average MSE down to the configured threshold, at each rewiring
/// probability. A centralized run on the complete graph provides the
/// reference floor per seed.
pub fn run_connectivity_sweep(
    config: &ExperimentConfig,
    master_seed: u64,
) -> Result<ConnectivitySweep> {
    let sweep = &config.sweep;
    let threshold = sweep.mse_threshold;
    let probabilities = sweep.connectivity_values();
    let seeds = run_seeds(master_seed, sweep.seeds_per_point);
    let solver = SolverConfig {
        t_max: sweep.max_iterations,
        ..config.solver.to_solver_config()
    };
    let options = RunOptions {
        record_stride: 0,
        stop_mse: Some(threshold),
        ..RunOptions::default()
    };
    let num_agents = config.graph.num_agents;

    let mut baseline = Vec::with_capacity(seeds.len());
    for (seed_index, &seed) in seeds.iter().enumerate() {
        let inst = assemble_with(config, seed, num_agents, Topology::Complete)?;
        let run = run_gwf(&inst.problem, &solver, &inst.truth, &options)?;
        let last = run.trace.final_row().expect("trace always has rows");
        baseline.push(ConnectivityRun {
            rewire_probability: f64::NAN,
            seed_index,
            solver: SolverKind::GwfComplete,
            iterations_to_threshold: run.stopped_early.then_some(run.iterations),
            final_mse: last.mse,
            final_consensus: 0.0,
        });
    }
    let baseline_median =
        median_iterations(&baseline.iter().map(|r| r.iterations_to_threshold).collect::<Vec<_>>());

    let mut runs = Vec::new();
    let mut points = Vec::with_capacity(probabilities.len());
    for &p in &probabilities {
        let mut counts = Vec::with_capacity(seeds.len());
        for (seed_index, &seed) in seeds.iter().enumerate() {
            let inst = assemble_with(config, seed, num_agents, Topology::SmallWorldWith(p))?;
            let run = run_dgwf(&inst.problem, &solver, &inst.truth, &options)?;
            let last = run.trace.final_row().expect("trace always has rows");
            let reached = run.stopped_early.then_some(run.iterations);
            counts.push(reached);
            runs.push(ConnectivityRun {
                rewire_probability: p,
                seed_index,
                solver: SolverKind::Dgwf,
                iterations_to_threshold: reached,
                final_mse: last.mse,
                final_consensus: last.consensus_error,
            });
        }
        points.push(ConnectivityPoint {
            rewire_probability: p,
            dgwf_median_iterations: median_iterations(&counts),
            gwf_complete_median_iterations: baseline_median,
        });
    }
    Ok(ConnectivitySweep { threshold, runs, baseline, points })
}

/// Measures the reconstruction error both solvers reach within a fixed
/// iteration budget as the number of receivers grows.
pub fn run_receiver_sweep(config: &ExperimentConfig, master_seed: u64) -> Result<ReceiverSweep> {
    let sweep = &config.sweep;
    let sizes = sweep.receiver_values();
    let seeds = run_seeds(master_seed, sweep.seeds_per_point);
    let solver = config.solver.to_solver_config();
    let options = RunOptions { record_stride: 0, ..RunOptions::default() };

    let mut runs = Vec::new();
    let mut points = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let mut dgwf_mse = Vec::with_capacity(seeds.len());
        let mut gwf_mse = Vec::with_capacity(seeds.len());
        for (seed_index, &seed) in seeds.iter().enumerate() {
            let inst = assemble_with(config, seed, n, Topology::SmallWorld)?;
            let drun = run_dgwf(&inst.problem, &solver, &inst.truth, &options)?;
            let dlast = drun.trace.final_row().expect("trace always has rows");
            dgwf_mse.push(dlast.mse);
            runs.push(ReceiverRun {
                num_agents: n,
                seed_index,
                solver: SolverKind::Dgwf,
                final_mse: dlast.mse,
                final_consensus: dlast.consensus_error,
            });
            let grun = run_gwf(&inst.problem, &solver, &inst.truth, &options)?;
            let glast = grun.trace.final_row().expect("trace always has rows");
            gwf_mse.push(glast.mse);
            runs.push(ReceiverRun {
                num_agents: n,
                seed_index,
                solver: SolverKind::Gwf,
                final_mse: glast.mse,
                final_consensus: 0.0,
            });
        }
        points.push(ReceiverPoint {
            num_agents: n,
            dgwf_median_mse: median(&dgwf_mse),
            gwf_median_mse: median(&gwf_mse),
        });
    }
    Ok(ReceiverSweep { t_max: solver.t_max, runs, points })
}
