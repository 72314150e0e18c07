//! Distributed and centralized Wirtinger-flow solvers.
//!
//! Every agent keeps a primal image estimate and a dual variable. One
//! iteration applies, simultaneously for all agents, a gradient step on the
//! local objective plus a Laplacian consensus pull and a dual correction,
//! all scaled by a saturating step schedule divided by the norm of the
//! spectral initialization.

mod gradient;
mod init;
mod run;

pub use gradient::{average_objective, local_objective, local_wirtinger_gradient};
pub use init::{lifted_backprojection, spectral_initialize, SpectralInit};
pub use run::{dgwf_step, run_dgwf, run_gwf, stacked_step, DgwfRun, GwfRun};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::AgentGraph;
use crate::measurements::MeasurementSet;
use crate::scene::SamplingMatrix;

/// A distributed imaging instance: one sampling matrix per agent, the graph
/// they communicate over, and the pairwise measurements on its edges.
#[derive(Debug, Clone)]
pub struct Problem {
    sampling: Vec<SamplingMatrix>,
    graph: AgentGraph,
    measurements: MeasurementSet,
    /// Per-agent neighbor table: (neighbor, edge index, conjugate lookup).
    adj: Vec<Vec<NeighborRef>>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct NeighborRef {
    pub agent: usize,
    pub edge: usize,
    pub conjugate: bool,
}

impl Problem {
    pub fn new(
        sampling: Vec<SamplingMatrix>,
        graph: AgentGraph,
        measurements: MeasurementSet,
    ) -> Result<Self> {
        if sampling.len() != graph.num_agents() {
            return Err(Error::DimensionMismatch {
                context: "sampling matrices vs agents",
                expected: graph.num_agents(),
                got: sampling.len(),
            });
        }
        let first = sampling.first().ok_or(Error::Empty("sampling matrices"))?;
        let (s_count, k) = (first.num_samples(), first.num_voxels());
        for m in &sampling {
            if m.num_samples() != s_count || m.num_voxels() != k {
                return Err(Error::DimensionMismatch {
                    context: "sampling matrix shapes",
                    expected: s_count * k,
                    got: m.num_samples() * m.num_voxels(),
                });
            }
        }
        if measurements.edges() != graph.edges() {
            return Err(Error::InvalidParameter {
                name: "measurements",
                reason: "measurement edges do not match the graph".into(),
            });
        }
        if measurements.num_samples() != s_count {
            return Err(Error::DimensionMismatch {
                context: "measurement frequencies vs sampling rows",
                expected: s_count,
                got: measurements.num_samples(),
            });
        }
        let mut adj = vec![Vec::new(); graph.num_agents()];
        for (edge, &(a, b)) in graph.edges().iter().enumerate() {
            adj[a].push(NeighborRef { agent: b, edge, conjugate: false });
            adj[b].push(NeighborRef { agent: a, edge, conjugate: true });
        }
        Ok(Self { sampling, graph, measurements, adj })
    }

    pub fn num_agents(&self) -> usize {
        self.graph.num_agents()
    }

    pub fn num_voxels(&self) -> usize {
        self.sampling[0].num_voxels()
    }

    pub fn num_samples(&self) -> usize {
        self.sampling[0].num_samples()
    }

    pub fn sampling(&self) -> &[SamplingMatrix] {
        &self.sampling
    }

    pub fn graph(&self) -> &AgentGraph {
        &self.graph
    }

    pub fn measurements(&self) -> &MeasurementSet {
        &self.measurements
    }

    pub(crate) fn neighbors_of(&self, agent: usize) -> &[NeighborRef] {
        &self.adj[agent]
    }
}

/// Solver coefficients and iteration budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Weight of the Laplacian consensus pull in the primal update.
    pub lambda1: f64,
    /// Weight coupling the dual variable to the primal update and the
    /// Laplacian to the dual update.
    pub lambda2: f64,
    /// Time constant of the saturating step schedule.
    pub tau0: f64,
    /// Upper cap on the step size.
    pub eta_cap: f64,
    /// Number of iterations to run.
    pub t_max: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { lambda1: 1.0, lambda2: 1.0, tau0: 3300.0, eta_cap: 0.01, t_max: 4000 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "tau0",
                reason: format!("schedule time constant must be positive, got {}", self.tau0),
            });
        }
        if !(self.eta_cap > 0.0) {
            return Err(Error::InvalidParameter {
                name: "eta_cap",
                reason: format!("step cap must be positive, got {}", self.eta_cap),
            });
        }
        if self.lambda1 < 0.0 || self.lambda2 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: "consensus and dual weights must be nonnegative".into(),
            });
        }
        Ok(())
    }
}

/// Ramp-then-cap step size `min(1 - exp(-t / tau0), eta_cap)`.
pub fn step_schedule(t: usize, config: &SolverConfig) -> f64 {
    let ramp = 1.0 - (-(t as f64) / config.tau0).exp();
    ramp.min(config.eta_cap)
}

/// Primal and dual variables of one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub x: Vec<Complex64>,
    pub v: Vec<Complex64>,
}

impl AgentState {
    pub fn fresh(x0: &[Complex64]) -> Self {
        Self { x: x0.to_vec(), v: vec![Complex64::new(0.0, 0.0); x0.len()] }
    }
}

/// One recorded point of a solver run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    /// Iterations completed when the row was recorded.
    pub t: usize,
    /// Phase-aligned mean squared error of the network-average estimate.
    pub mse: f64,
    /// Total squared deviation of agent states from their mean.
    pub consensus_error: f64,
    /// Step size the schedule prescribes at this iteration count.
    pub eta: f64,
    /// Agent-averaged objective at the network-average estimate, when the
    /// run was asked to record it.
    pub objective: Option<f64>,
}

/// Recorded progress of a solver run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub rows: Vec<TraceRow>,
}

impl Trace {
    pub fn mse_series(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().map(|r| (r.t, r.mse))
    }

    pub fn consensus_series(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().map(|r| (r.t, r.consensus_error))
    }

    /// Rows that carry a recorded objective value.
    pub fn objective_series(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().filter_map(|r| r.objective.map(|f| (r.t, f)))
    }

    pub fn final_row(&self) -> Option<&TraceRow> {
        self.rows.last()
    }
}

/// Knobs of a full solver run that are not part of the algorithm itself.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Record a trace row every this many iterations (0 records only the
    /// first and last rows).
    pub record_stride: usize,
    /// Stop once the aligned MSE of the mean estimate falls to this level.
    pub stop_mse: Option<f64>,
    /// Stop once the consensus error falls to this level; combined with
    /// `stop_mse`, both must hold.
    pub stop_consensus: Option<f64>,
    /// Start from this vector instead of the spectral initialization.
    pub init_override: Option<Vec<Complex64>>,
    /// Evaluate the agent-averaged objective at every recorded row. Costs
    /// roughly half a solver round per evaluation.
    pub record_objective: bool,
}

impl RunOptions {
    pub(crate) fn effective_stride(&self, t_max: usize) -> usize {
        if self.record_stride == 0 {
            t_max.max(1)
        } else {
            self.record_stride
        }
    }
}
