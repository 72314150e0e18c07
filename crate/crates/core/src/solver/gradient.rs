//! Local phaseless objectives and their Wirtinger gradients.
//!
//! Agent `i` penalizes, for each neighbor `j` and frequency `s`, the misfit
//! `e = <a_i, x> conj(<a_j, x>) - d_ij`. The gradient with respect to the
//! conjugate state accumulates `conj(e) <a_i, x> a_j + e <a_j, x> a_i`
//! through inner products only; no lifted matrix is ever formed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{axpy, dot_conj, SplitVec};

use super::Problem;

/// Reusable buffers for repeated gradient evaluations at one problem size.
pub(crate) struct GradientScratch {
    /// Own projections `<a_i^s, y>` per frequency.
    own: Vec<Complex64>,
    /// Accumulated `e * <a_j^s, y>` coefficients of the own sampling rows.
    coeff: Vec<Complex64>,
}

impl GradientScratch {
    pub(crate) fn for_problem(problem: &Problem) -> Self {
        let s = problem.num_samples();
        Self { own: vec![Complex64::new(0.0, 0.0); s], coeff: vec![Complex64::new(0.0, 0.0); s] }
    }
}

fn check_point(problem: &Problem, agent: usize, len: usize) -> Result<()> {
    if agent >= problem.num_agents() {
        return Err(Error::InvalidParameter {
            name: "agent",
            reason: format!("index {agent} out of range for {} agents", problem.num_agents()),
        });
    }
    if len != problem.num_voxels() {
        return Err(Error::DimensionMismatch {
            context: "state vs voxel grid",
            expected: problem.num_voxels(),
            got: len,
        });
    }
    if problem.neighbors_of(agent).is_empty() {
        return Err(Error::IsolatedAgent { agent });
    }
    Ok(())
}

/// Writes the Wirtinger gradient of agent `agent` at `y` into `out`.
pub(crate) fn gradient_split(
    problem: &Problem,
    agent: usize,
    y: &SplitVec,
    out: &mut SplitVec,
    scratch: &mut GradientScratch,
) -> Result<()> {
    check_point(problem, agent, y.len())?;
    let s_count = problem.num_samples();
    let own_matrix = &problem.sampling()[agent];
    for s in 0..s_count {
        let (ar, ai) = own_matrix.row_planes(s);
        scratch.own[s] = dot_conj(ar, ai, &y.re, &y.im);
        scratch.coeff[s] = Complex64::new(0.0, 0.0);
    }
    out.fill_zero();
    let data = problem.measurements();
    for nb in problem.neighbors_of(agent) {
        let other = &problem.sampling()[nb.agent];
        let stored = data.edge_slice(nb.edge);
        for s in 0..s_count {
            let (br, bi) = other.row_planes(s);
            let q = dot_conj(br, bi, &y.re, &y.im);
            let d = if nb.conjugate { stored[s].conj() } else { stored[s] };
            let p = scratch.own[s];
            let e = p * q.conj() - d;
            axpy(e.conj() * p, br, bi, &mut out.re, &mut out.im);
            scratch.coeff[s] += e * q;
        }
    }
    for s in 0..s_count {
        let (ar, ai) = own_matrix.row_planes(s);
        axpy(scratch.coeff[s], ar, ai, &mut out.re, &mut out.im);
    }
    let scale = 1.0 / (2.0 * problem.neighbors_of(agent).len() as f64 * s_count as f64);
    for v in out.re.iter_mut().chain(out.im.iter_mut()) {
        *v *= scale;
    }
    Ok(())
}

/// Local objective value of one agent at `y`.
pub(crate) fn objective_split(problem: &Problem, agent: usize, y: &SplitVec) -> Result<f64> {
    check_point(problem, agent, y.len())?;
    let s_count = problem.num_samples();
    let own_matrix = &problem.sampling()[agent];
    let own: Vec<Complex64> = (0..s_count)
        .map(|s| {
            let (ar, ai) = own_matrix.row_planes(s);
            dot_conj(ar, ai, &y.re, &y.im)
        })
        .collect();
    let data = problem.measurements();
    let mut total = 0.0;
    for nb in problem.neighbors_of(agent) {
        let other = &problem.sampling()[nb.agent];
        let stored = data.edge_slice(nb.edge);
        for s in 0..s_count {
            let (br, bi) = other.row_planes(s);
            let q = dot_conj(br, bi, &y.re, &y.im);
            let d = if nb.conjugate { stored[s].conj() } else { stored[s] };
            total += (own[s] * q.conj() - d).norm_sqr();
        }
    }
    Ok(total / (2.0 * problem.neighbors_of(agent).len() as f64 * s_count as f64))
}

/// Wirtinger gradient of agent `agent`'s local objective at `x`.
pub fn local_wirtinger_gradient(problem: &Problem, agent: usize, x: &[Complex64]) -> Result<Vec<Complex64>> {
    let y = SplitVec::from_complex(x);
    let mut out = SplitVec::zeros(x.len());
    let mut scratch = GradientScratch::for_problem(problem);
    gradient_split(problem, agent, &y, &mut out, &mut scratch)?;
    Ok(out.to_complex())
}

/// Local objective value of agent `agent` at `x`.
pub fn local_objective(problem: &Problem, agent: usize, x: &[Complex64]) -> Result<f64> {
    objective_split(problem, agent, &SplitVec::from_complex(x))
}

/// Mean of the local objectives at a shared point.
pub fn average_objective(problem: &Problem, x: &[Complex64]) -> Result<f64> {
    let y = SplitVec::from_complex(x);
    let mut total = 0.0;
    for agent in 0..problem.num_agents() {
        total += objective_split(problem, agent, &y)?;
    }
    Ok(total / problem.num_agents() as f64)
}
