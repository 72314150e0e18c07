//! Undirected agent networks and graph-Laplacian operators.
//!
//! Agents exchange state only along edges, so the Laplacian is never
//! materialized at system size; `laplacian_apply` walks the edge list and
//! works blockwise on per-agent state vectors. Small-world topologies come
//! from ring-lattice rewiring and are resampled until connected.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Maximum number of rewiring attempts before giving up on connectivity.
const MAX_CONNECT_ATTEMPTS: usize = 100;

/// An undirected simple graph over `n` agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentGraph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl AgentGraph {
    /// Builds a graph from an explicit edge list. Edges are stored with the
    /// smaller endpoint first; self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("self-loop at node {a}"),
                });
            }
            if a >= n || b >= n {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("edge ({a}, {b}) outside node range 0..{n}"),
                });
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidParameter {
                    name: "edges",
                    reason: format!("duplicate edge ({}, {})", e.0, e.1),
                });
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self { n, neighbors, edges })
    }

    /// Complete graph on `n` agents.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("graph nodes"));
        }
        let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
        Self::from_edges(n, edges)
    }

    /// Watts-Strogatz small-world graph: a ring lattice where every node is
    /// linked to its `base_degree` nearest neighbors, with each lattice edge
    /// rewired to a uniformly random endpoint with probability `p`. Sampling
    /// repeats until the result is connected.
    ///
    /// Graphs drawn with the same seed share their rewiring randomness across
    /// `p`: raising the probability only grows the set of rewired edges, so a
    /// sweep over `p` at a fixed seed compares nested graphs rather than
    /// independent samples.
    pub fn small_world(n: usize, p: f64, base_degree: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("need at least 2 agents, got {n}"),
            });
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "p",
                reason: format!("rewiring probability must lie in [0, 1], got {p}"),
            });
        }
        if base_degree == 0 || base_degree % 2 != 0 {
            return Err(Error::InvalidParameter {
                name: "base_degree",
                reason: format!("ring lattice degree must be even and positive, got {base_degree}"),
            });
        }
        if base_degree > n - 1 && n > 2 {
            return Err(Error::InvalidParameter {
                name: "base_degree",
                reason: format!("degree {base_degree} too large for {n} nodes"),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_CONNECT_ATTEMPTS {
            let graph = Self::sample_small_world(n, p, base_degree, &mut rng)?;
            if graph.is_connected() {
                return Ok(graph);
            }
        }
        Err(Error::Disconnected { attempts: MAX_CONNECT_ATTEMPTS, nodes: n, p })
    }

    fn sample_small_world(n: usize, p: f64, base_degree: usize, rng: &mut ChaCha8Rng) -> Result<Self> {
        let half = base_degree / 2;
        // Ring lattice; the set collapses duplicate wrap-around edges on tiny
        // rings (n = 2 yields the single edge (0, 1)).
        let mut set = BTreeSet::new();
        for i in 0..n {
            for d in 1..=half {
                let j = (i + d) % n;
                if i != j {
                    set.insert((i.min(j), i.max(j)));
                }
            }
        }
        // Every lattice edge gets one rewiring decision and one target stream
        // drawn up front, independent of `p` and of the other edges' outcomes.
        // Runs that share a seed therefore share randomness across rewiring
        // probabilities: raising `p` only grows the set of rewired edges while
        // the surviving rewires keep their targets, so sweeps over `p` compare
        // nested graphs instead of independent samples.
        let lattice: Vec<(usize, usize)> = (1..=half)
            .flat_map(|d| (0..n).map(move |i| (i, (i + d) % n)))
            .collect();
        let draws: Vec<(f64, u64)> =
            lattice.iter().map(|_| (rng.gen::<f64>(), rng.gen::<u64>())).collect();
        // Rewiring pass: each clockwise lattice edge (i, i + d) may have its
        // far endpoint replaced by a uniform non-neighbor of i.
        for (&(i, j), &(decision, target_seed)) in lattice.iter().zip(&draws) {
            let e = (i.min(j), i.max(j));
            if decision >= p || !set.contains(&e) {
                continue;
            }
            let degree_i = set.iter().filter(|&&(a, b)| a == i || b == i).count();
            if degree_i >= n - 1 {
                continue;
            }
            let mut target_rng = ChaCha8Rng::seed_from_u64(target_seed);
            loop {
                let cand = target_rng.gen_range(0..n);
                if cand == i {
                    continue;
                }
                let new_edge = (i.min(cand), i.max(cand));
                if set.contains(&new_edge) {
                    continue;
                }
                set.remove(&e);
                set.insert(new_edge);
                break;
            }
        }
        Self::from_edges(n, set)
    }

    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges with the smaller endpoint first, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Applies the graph Laplacian blockwise to stacked per-agent states:
    /// `(L x)_i = sum_{j ~ i} (x_i - x_j)`, accumulated over the edge list.
    pub fn laplacian_apply(&self, states: &[Vec<Complex64>]) -> Result<Vec<Vec<Complex64>>> {
        self.check_states(states)?;
        let k = states.first().map_or(0, Vec::len);
        let mut out = vec![vec![Complex64::new(0.0, 0.0); k]; self.n];
        for &(a, b) in &self.edges {
            for idx in 0..k {
                let d = states[a][idx] - states[b][idx];
                out[a][idx] += d;
                out[b][idx] -= d;
            }
        }
        Ok(out)
    }

    /// Laplacian quadratic form `sum_{(i,j) in E} ||x_i - x_j||^2`, which is
    /// real and nonnegative by construction.
    pub fn laplacian_quadratic_form(&self, states: &[Vec<Complex64>]) -> Result<f64> {
        self.check_states(states)?;
        let mut total = 0.0;
        for &(a, b) in &self.edges {
            total += states[a]
                .iter()
                .zip(&states[b])
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>();
        }
        Ok(total)
    }

    fn check_states(&self, states: &[Vec<Complex64>]) -> Result<()> {
        if states.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "stacked states vs agents",
                expected: self.n,
                got: states.len(),
            });
        }
        let k = states.first().map_or(0, Vec::len);
        for s in states {
            if s.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "agent state lengths",
                    expected: k,
                    got: s.len(),
                });
            }
        }
        Ok(())
    }

    /// Dense Laplacian for small-graph diagnostics and tests.
    pub fn laplacian_dense(&self) -> Vec<Vec<f64>> {
        let mut l = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            l[i][i] = self.degree(i) as f64;
        }
        for &(a, b) in &self.edges {
            l[a][b] = -1.0;
            l[b][a] = -1.0;
        }
        l
    }

    /// Second-smallest Laplacian eigenvalue, estimated by power iteration on
    /// the spectrally shifted operator with the all-ones direction projected
    /// out each step.
    pub fn algebraic_connectivity(&self) -> Result<f64> {
        if self.n < 2 {
            return Err(Error::InvalidParameter {
                name: "graph",
                reason: "connectivity needs at least 2 nodes".into(),
            });
        }
        let shift = 2.0 * self.max_degree() as f64 + 1.0;
        let n = self.n;
        // Deterministic start with energy in every nontrivial mode.
        let mut v: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * 0.7311).sin() + 0.1).collect();
        project_out_ones(&mut v);
        normalize(&mut v)?;
        let mut value = 0.0;
        let mut prev = f64::INFINITY;
        let max_iters = 50_000;
        for it in 0..max_iters {
            // w = (shift I - L) v
            let mut w = vec![0.0; n];
            for i in 0..n {
                w[i] = (shift - self.degree(i) as f64) * v[i];
            }
            for &(a, b) in &self.edges {
                w[a] += v[b];
                w[b] += v[a];
            }
            project_out_ones(&mut w);
            value = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
            normalize(&mut w)?;
            v = w;
            if (value - prev).abs() <= 1e-13 * value.abs().max(1.0) {
                if it > 4 {
                    return Ok(shift - value);
                }
            }
            prev = value;
        }
        // Rayleigh quotient has settled well before this in practice.
        let residual = (value - prev).abs() / value.abs().max(1.0);
        if residual < 1e-8 {
            Ok(shift - value)
        } else {
            Err(Error::NoConvergence { iterations: max_iters, residual })
        }
    }

    /// One `i j` line per edge, 0-based, smaller endpoint first.
    pub fn edge_list_string(&self) -> String {
        let mut s = String::new();
        for &(a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

fn project_out_ones(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

fn normalize(v: &mut [f64]) -> Result<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NoConvergence { iterations: 0, residual: f64::INFINITY });
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    Ok(())
}
