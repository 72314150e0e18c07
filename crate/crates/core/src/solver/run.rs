//! The distributed primal-dual iteration and its centralized counterpart.
//!
//! All agents advance simultaneously from a snapshot of the network state:
//! the primal update descends the local gradient plus the Laplacian
//! consensus pull and the dual variable, the dual update integrates the
//! Laplacian disagreement. The centralized variant follows the averaged
//! gradient from the same initialization, which is exactly the mean-field
//! trajectory of the distributed one.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::SplitVec;
use crate::metrics::mse_aligned;

use super::gradient::{average_objective, gradient_split, GradientScratch};
use super::init::spectral_initialize;
use super::{step_schedule, AgentState, Problem, RunOptions, SolverConfig, Trace, TraceRow};

fn maybe_objective(
    problem: &Problem,
    point: &[Complex64],
    options: &RunOptions,
) -> Result<Option<f64>> {
    if options.record_objective {
        Ok(Some(average_objective(problem, point)?))
    } else {
        Ok(None)
    }
}

/// Completed distributed run.
#[derive(Debug, Clone)]
pub struct DgwfRun {
    pub states: Vec<AgentState>,
    pub trace: Trace,
    pub x0: Vec<Complex64>,
    pub x0_norm: f64,
    /// Iterations actually executed.
    pub iterations: usize,
    pub stopped_early: bool,
}

impl DgwfRun {
    /// Network-average estimate of the final states.
    pub fn mean_estimate(&self) -> Vec<Complex64> {
        let n = self.states.len();
        let k = self.states.first().map_or(0, |s| s.x.len());
        let mut mean = vec![Complex64::new(0.0, 0.0); k];
        for s in &self.states {
            for (m, z) in mean.iter_mut().zip(&s.x) {
                *m += z;
            }
        }
        let inv = 1.0 / n as f64;
        for m in &mut mean {
            *m *= inv;
        }
        mean
    }
}

/// Completed centralized run.
#[derive(Debug, Clone)]
pub struct GwfRun {
    pub x: Vec<Complex64>,
    pub trace: Trace,
    pub x0: Vec<Complex64>,
    pub x0_norm: f64,
    pub iterations: usize,
    pub stopped_early: bool,
}

struct Engine<'a> {
    problem: &'a Problem,
    config: &'a SolverConfig,
    inv_norm: f64,
    grad: SplitVec,
    lap: SplitVec,
    scratch: GradientScratch,
}

impl<'a> Engine<'a> {
    fn new(problem: &'a Problem, config: &'a SolverConfig, x0_norm: f64) -> Result<Self> {
        config.validate()?;
        if !(x0_norm > 0.0) {
            return Err(Error::ZeroInitialization);
        }
        let k = problem.num_voxels();
        Ok(Self {
            problem,
            config,
            inv_norm: 1.0 / x0_norm,
            grad: SplitVec::zeros(k),
            lap: SplitVec::zeros(k),
            scratch: GradientScratch::for_problem(problem),
        })
    }

    /// One synchronous round over all agents, reading `xs`/`vs` and writing
    /// `xs_next`/`vs_next`.
    fn round(
        &mut self,
        t: usize,
        xs: &[SplitVec],
        vs: &[SplitVec],
        xs_next: &mut [SplitVec],
        vs_next: &mut [SplitVec],
    ) -> Result<()> {
        let step = step_schedule(t, self.config) * self.inv_norm;
        let l1 = self.config.lambda1;
        let l2 = self.config.lambda2;
        let k = self.problem.num_voxels();
        for i in 0..self.problem.num_agents() {
            gradient_split(self.problem, i, &xs[i], &mut self.grad, &mut self.scratch)?;
            // Laplacian row via the neighbor sum: deg(i) x_i - sum_j x_j.
            let deg = self.problem.graph().degree(i) as f64;
            for idx in 0..k {
                self.lap.re[idx] = deg * xs[i].re[idx];
                self.lap.im[idx] = deg * xs[i].im[idx];
            }
            for nb in self.problem.neighbors_of(i) {
                let other = &xs[nb.agent];
                for idx in 0..k {
                    self.lap.re[idx] -= other.re[idx];
                    self.lap.im[idx] -= other.im[idx];
                }
            }
            let (xn, vn) = (&mut xs_next[i], &mut vs_next[i]);
            for idx in 0..k {
                xn.re[idx] = xs[i].re[idx]
                    - step * (l1 * self.lap.re[idx] + l2 * vs[i].re[idx] + self.grad.re[idx]);
                xn.im[idx] = xs[i].im[idx]
                    - step * (l1 * self.lap.im[idx] + l2 * vs[i].im[idx] + self.grad.im[idx]);
                vn.re[idx] = vs[i].re[idx] + step * l2 * self.lap.re[idx];
                vn.im[idx] = vs[i].im[idx] + step * l2 * self.lap.im[idx];
            }
        }
        Ok(())
    }
}

fn check_states(problem: &Problem, states: &[AgentState]) -> Result<()> {
    if states.len() != problem.num_agents() {
        return Err(Error::DimensionMismatch {
            context: "agent states vs agents",
            expected: problem.num_agents(),
            got: states.len(),
        });
    }
    let k = problem.num_voxels();
    for s in states {
        if s.x.len() != k || s.v.len() != k {
            return Err(Error::DimensionMismatch {
                context: "agent state vs voxel grid",
                expected: k,
                got: s.x.len(),
            });
        }
    }
    Ok(())
}

/// One synchronous iteration of the distributed solver at step index `t`.
pub fn dgwf_step(
    problem: &Problem,
    states: &[AgentState],
    t: usize,
    config: &SolverConfig,
    x0_norm: f64,
) -> Result<Vec<AgentState>> {
    check_states(problem, states)?;
    let mut engine = Engine::new(problem, config, x0_norm)?;
    let xs: Vec<SplitVec> = states.iter().map(|s| SplitVec::from_complex(&s.x)).collect();
    let vs: Vec<SplitVec> = states.iter().map(|s| SplitVec::from_complex(&s.v)).collect();
    let k = problem.num_voxels();
    let mut xs_next = vec![SplitVec::zeros(k); states.len()];
    let mut vs_next = vec![SplitVec::zeros(k); states.len()];
    engine.round(t, &xs, &vs, &mut xs_next, &mut vs_next)?;
    Ok(xs_next
        .into_iter()
        .zip(vs_next)
        .map(|(x, v)| AgentState { x: x.to_complex(), v: v.to_complex() })
        .collect())
}

/// The same iteration computed through the stacked form: one Laplacian
/// application over the whole network followed by blockwise updates. Slower,
/// structured differently, and kept as a cross-check for [`dgwf_step`].
pub fn stacked_step(
    problem: &Problem,
    states: &[AgentState],
    t: usize,
    config: &SolverConfig,
    x0_norm: f64,
) -> Result<Vec<AgentState>> {
    check_states(problem, states)?;
    config.validate()?;
    if !(x0_norm > 0.0) {
        return Err(Error::ZeroInitialization);
    }
    let step = step_schedule(t, config) / x0_norm;
    let xs: Vec<Vec<Complex64>> = states.iter().map(|s| s.x.clone()).collect();
    let lap = problem.graph().laplacian_apply(&xs)?;
    let mut out = Vec::with_capacity(states.len());
    for (i, state) in states.iter().enumerate() {
        let grad = super::gradient::local_wirtinger_gradient(problem, i, &state.x)?;
        let x = state
            .x
            .iter()
            .zip(&lap[i])
            .zip(&state.v)
            .zip(&grad)
            .map(|(((x, l), v), g)| x - (l * config.lambda1 + v * config.lambda2 + g) * step)
            .collect();
        let v = state
            .v
            .iter()
            .zip(&lap[i])
            .map(|(v, l)| v + l * (config.lambda2 * step))
            .collect();
        out.push(AgentState { x, v });
    }
    Ok(out)
}

fn mean_into(xs: &[SplitVec], mean: &mut Vec<Complex64>) {
    let n = xs.len();
    let k = xs[0].len();
    mean.clear();
    mean.resize(k, Complex64::new(0.0, 0.0));
    for x in xs {
        for idx in 0..k {
            mean[idx].re += x.re[idx];
            mean[idx].im += x.im[idx];
        }
    }
    let inv = 1.0 / n as f64;
    for m in mean.iter_mut() {
        *m *= inv;
    }
}

fn consensus_of(xs: &[SplitVec], mean: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for x in xs {
        for (idx, m) in mean.iter().enumerate() {
            let dr = x.re[idx] - m.re;
            let di = x.im[idx] - m.im;
            total += dr * dr + di * di;
        }
    }
    total
}

fn stop_reached(options: &RunOptions, mse: f64, consensus: f64) -> bool {
    match (options.stop_mse, options.stop_consensus) {
        (None, None) => false,
        (Some(m), None) => mse <= m,
        (None, Some(c)) => consensus <= c,
        (Some(m), Some(c)) => mse <= m && consensus <= c,
    }
}

fn resolve_init(problem: &Problem, options: &RunOptions) -> Result<(Vec<Complex64>, f64)> {
    let x0 = match &options.init_override {
        Some(v) => {
            if v.len() != problem.num_voxels() {
                return Err(Error::DimensionMismatch {
                    context: "initialization vs voxel grid",
                    expected: problem.num_voxels(),
                    got: v.len(),
                });
            }
            v.clone()
        }
        None => spectral_initialize(problem)?.x0,
    };
    let norm = x0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroInitialization);
    }
    Ok((x0, norm))
}

/// Runs the distributed solver from the spectral initialization (or the
/// override in `options`), recording a trace of aligned MSE and consensus
/// error against `truth`.
pub fn run_dgwf(
    problem: &Problem,
    config: &SolverConfig,
    truth: &[Complex64],
    options: &RunOptions,
) -> Result<DgwfRun> {
    if truth.len() != problem.num_voxels() {
        return Err(Error::DimensionMismatch {
            context: "truth vs voxel grid",
            expected: problem.num_voxels(),
            got: truth.len(),
        });
    }
    let (x0, x0_norm) = resolve_init(problem, options)?;
    let mut engine = Engine::new(problem, config, x0_norm)?;
    let n = problem.num_agents();
    let k = problem.num_voxels();
    let split0 = SplitVec::from_complex(&x0);
    let mut xs = vec![split0; n];
    let mut vs = vec![SplitVec::zeros(k); n];
    let mut xs_next = vec![SplitVec::zeros(k); n];
    let mut vs_next = vec![SplitVec::zeros(k); n];
    let mut mean = Vec::with_capacity(k);

    let stride = options.effective_stride(config.t_max);
    let mut trace = Trace::default();
    let mse0 = mse_aligned(&x0, truth)?;
    trace.rows.push(TraceRow {
        t: 0,
        mse: mse0,
        consensus_error: 0.0,
        eta: step_schedule(0, config),
        objective: maybe_objective(problem, &x0, options)?,
    });

    let mut iterations = config.t_max;
    let mut stopped_early = false;
    for t in 0..config.t_max {
        engine.round(t, &xs, &vs, &mut xs_next, &mut vs_next)?;
        std::mem::swap(&mut xs, &mut xs_next);
        std::mem::swap(&mut vs, &mut vs_next);
        let done = t + 1;
        mean_into(&xs, &mut mean);
        let mse = mse_aligned(&mean, truth)?;
        let consensus = consensus_of(&xs, &mean);
        if !mse.is_finite() || !consensus.is_finite() {
            return Err(Error::Diverged { iteration: done });
        }
        let stop = stop_reached(options, mse, consensus);
        if done % stride == 0 || done == config.t_max || stop {
            if trace.rows.last().map(|r| r.t) != Some(done) {
                trace.rows.push(TraceRow {
                    t: done,
                    mse,
                    consensus_error: consensus,
                    eta: step_schedule(done, config),
                    objective: maybe_objective(problem, &mean, options)?,
                });
            }
        }
        if stop {
            iterations = done;
            stopped_early = true;
            break;
        }
    }
    let states = xs
        .into_iter()
        .zip(vs)
        .map(|(x, v)| AgentState { x: x.to_complex(), v: v.to_complex() })
        .collect();
    Ok(DgwfRun { states, trace, x0, x0_norm, iterations, stopped_early })
}

/// Runs the centralized flow: a single estimate following the average of
/// all local gradients, with the same schedule and normalization as the
/// distributed solver.
pub fn run_gwf(
    problem: &Problem,
    config: &SolverConfig,
    truth: &[Complex64],
    options: &RunOptions,
) -> Result<GwfRun> {
    if truth.len() != problem.num_voxels() {
        return Err(Error::DimensionMismatch {
            context: "truth vs voxel grid",
            expected: problem.num_voxels(),
            got: truth.len(),
        });
    }
    config.validate()?;
    let (x0, x0_norm) = resolve_init(problem, options)?;
    let n = problem.num_agents();
    let k = problem.num_voxels();
    let mut x = SplitVec::from_complex(&x0);
    let mut grad_sum = SplitVec::zeros(k);
    let mut grad = SplitVec::zeros(k);
    let mut scratch = GradientScratch::for_problem(problem);

    let stride = options.effective_stride(config.t_max);
    let mut trace = Trace::default();
    trace.rows.push(TraceRow {
        t: 0,
        mse: mse_aligned(&x0, truth)?,
        consensus_error: 0.0,
        eta: step_schedule(0, config),
        objective: maybe_objective(problem, &x0, options)?,
    });

    let mut iterations = config.t_max;
    let mut stopped_early = false;
    let inv_n = 1.0 / n as f64;
    for t in 0..config.t_max {
        grad_sum.fill_zero();
        for agent in 0..n {
            gradient_split(problem, agent, &x, &mut grad, &mut scratch)?;
            grad_sum.add_assign(&grad);
        }
        let step = step_schedule(t, config) / x0_norm * inv_n;
        for idx in 0..k {
            x.re[idx] -= step * grad_sum.re[idx];
            x.im[idx] -= step * grad_sum.im[idx];
        }
        let done = t + 1;
        let estimate = x.to_complex();
        let mse = mse_aligned(&estimate, truth)?;
        if !mse.is_finite() {
            return Err(Error::Diverged { iteration: done });
        }
        let stop = matches!(options.stop_mse, Some(m) if mse <= m);
        if done % stride == 0 || done == config.t_max || stop {
            if trace.rows.last().map(|r| r.t) != Some(done) {
                trace.rows.push(TraceRow {
                    t: done,
                    mse,
                    consensus_error: 0.0,
                    eta: step_schedule(done, config),
                    objective: maybe_objective(problem, &estimate, options)?,
                });
            }
        }
        if stop {
            iterations = done;
            stopped_early = true;
            break;
        }
    }
    Ok(GwfRun { x: x.to_complex(), trace, x0, x0_norm, iterations, stopped_early })
}
