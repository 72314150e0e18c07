//! Pairwise cross-correlation measurements.
//!
//! Each graph edge (i, j) carries one complex measurement per frequency:
//! the product of agent i's projection of the scene with the conjugate of
//! agent j's. Only the `i < j` orientation is stored; the reverse
//! orientation is the complex conjugate and is derived on lookup.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::AgentGraph;
use crate::kernel::{dot_conj, SplitVec};
use crate::scene::{ReflectivityImage, SamplingMatrix};

/// Cross-correlation data for every edge of an agent graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    num_samples: usize,
    edges: Vec<(usize, usize)>,
    /// Edge-major data: entry for edge index `e` at frequency `s` lives at
    /// `e * num_samples + s`.
    data: Vec<Complex64>,
    edge_index: BTreeMap<(usize, usize), usize>,
    /// Per-component standard deviation of the injected noise, if any.
    noise_sigma: Option<f64>,
}

impl MeasurementSet {
    fn new(num_samples: usize, edges: Vec<(usize, usize)>, data: Vec<Complex64>) -> Self {
        let edge_index = edges.iter().enumerate().map(|(idx, &e)| (e, idx)).collect();
        Self { num_samples, edges, data, edge_index, noise_sigma: None }
    }

    pub fn num_samples(&self) -> usize {
        self.num_samples
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Per-component noise standard deviation recorded by [`add_noise`].
    pub fn noise_sigma(&self) -> Option<f64> {
        self.noise_sigma
    }

    /// All frequencies of the stored orientation of one edge.
    pub fn edge_slice(&self, edge: usize) -> &[Complex64] {
        let lo = edge * self.num_samples;
        &self.data[lo..lo + self.num_samples]
    }

    /// Index of the stored edge `(min(i, j), max(i, j))`, if present.
    pub fn edge_id(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_index.get(&(i.min(j), i.max(j))).copied()
    }

    /// Measurement for the ordered pair (i, j); the unstored orientation is
    /// conjugated on the fly.
    pub fn get(&self, i: usize, j: usize, s: usize) -> Result<Complex64> {
        if s >= self.num_samples {
            return Err(Error::InvalidParameter {
                name: "s",
                reason: format!("frequency index {s} out of range {}", self.num_samples),
            });
        }
        let edge = self.edge_id(i, j).ok_or(Error::InvalidParameter {
            name: "edge",
            reason: format!("({i}, {j}) is not a measured pair"),
        })?;
        let stored = self.data[edge * self.num_samples + s];
        Ok(if i <= j { stored } else { stored.conj() })
    }

    /// Mean squared magnitude over all stored entries.
    pub fn mean_power(&self) -> Result<f64> {
        if self.data.is_empty() {
            return Err(Error::Empty("measurement set"));
        }
        Ok(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.data.len() as f64)
    }

    /// Iterates `(i, j, s, value)` over the stored orientation.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, Complex64)> + '_ {
        self.edges.iter().enumerate().flat_map(move |(e, &(i, j))| {
            (0..self.num_samples).map(move |s| (i, j, s, self.data[e * self.num_samples + s]))
        })
    }
}

/// Synthesizes noiseless cross-correlations of `scene` for every graph edge.
pub fn synthesize_measurements(
    sampling: &[SamplingMatrix],
    graph: &AgentGraph,
    scene: &ReflectivityImage,
) -> Result<MeasurementSet> {
    if sampling.len() != graph.num_agents() {
        return Err(Error::DimensionMismatch {
            context: "sampling matrices vs agents",
            expected: graph.num_agents(),
            got: sampling.len(),
        });
    }
    let first = sampling.first().ok_or(Error::Empty("sampling matrices"))?;
    let s_count = first.num_samples();
    let k = first.num_voxels();
    for m in sampling {
        if m.num_samples() != s_count || m.num_voxels() != k {
            return Err(Error::DimensionMismatch {
                context: "sampling matrix shapes",
                expected: s_count * k,
                got: m.num_samples() * m.num_voxels(),
            });
        }
    }
    if scene.as_slice().len() != k {
        return Err(Error::DimensionMismatch {
            context: "scene vs sampling vectors",
            expected: k,
            got: scene.as_slice().len(),
        });
    }
    let rho = SplitVec::from_complex(scene.as_slice());
    // Project the scene once per agent and frequency; every edge reuses the
    // two projections it needs.
    let projections: Vec<Vec<Complex64>> = sampling
        .iter()
        .map(|m| {
            (0..s_count)
                .map(|s| {
                    let (re, im) = m.row_planes(s);
                    dot_conj(re, im, &rho.re, &rho.im)
                })
                .collect()
        })
        .collect();
    let edges = graph.edges().to_vec();
    let mut data = Vec::with_capacity(edges.len() * s_count);
    for &(i, j) in &edges {
        for s in 0..s_count {
            data.push(projections[i][s] * projections[j][s].conj());
        }
    }
    Ok(MeasurementSet::new(s_count, edges, data))
}

/// Circularly symmetric unit normal: independent N(0, 1) real and imaginary
/// parts via the Box-Muller transform.
pub(crate) fn complex_standard_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Adds complex Gaussian noise scaled so the per-entry noise power sits
/// `snr_db` below the mean measurement power. An infinite SNR returns the
/// input unchanged.
pub fn add_noise(clean: &MeasurementSet, snr_db: f64, seed: u64) -> Result<MeasurementSet> {
    if snr_db == f64::INFINITY {
        return Ok(clean.clone());
    }
    let mean_power = clean.mean_power()?;
    let noise_power = mean_power * 10f64.powf(-snr_db / 10.0);
    let sigma_component = (noise_power / 2.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noisy = clean.clone();
    for z in &mut noisy.data {
        *z += complex_standard_normal(&mut rng) * sigma_component;
    }
    noisy.noise_sigma = Some(sigma_component);
    Ok(noisy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::ReflectivityImage;
    use proptest::prelude::*;
    use rand::Rng;

    fn pair_problem() -> (Vec<SamplingMatrix>, AgentGraph) {
        let a0 = SamplingMatrix::from_rows(0, vec![vec![Complex64::new(2.0, 0.0)]]).unwrap();
        let a1 = SamplingMatrix::from_rows(1, vec![vec![Complex64::new(0.0, 1.0)]]).unwrap();
        let graph = AgentGraph::from_edges(2, [(0, 1)]).unwrap();
        (vec![a0, a1], graph)
    }

    #[test]
    fn scalar_pair_matches_hand_computation() {
        let (sampling, graph) = pair_problem();
        let scene = ReflectivityImage::from_values(1, 1, vec![Complex64::new(1.0, 1.0)]).unwrap();
        let set = synthesize_measurements(&sampling, &graph, &scene).unwrap();
        // <a0, rho> = 2 + 2i, <a1, rho> = conj(i)(1 + i) = 1 - i,
        // d = (2 + 2i) * conj(1 - i) = 4i.
        let d = set.get(0, 1, 0).unwrap();
        assert!((d - Complex64::new(0.0, 4.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_scene_gives_zero_data() {
        let (sampling, graph) = pair_problem();
        let scene = ReflectivityImage::zeros(1, 1);
        let set = synthesize_measurements(&sampling, &graph, &scene).unwrap();
        assert!(set.iter().all(|(_, _, _, d)| d == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn reversed_orientation_is_conjugated_exactly() {
        let (sampling, graph) = pair_problem();
        let scene = ReflectivityImage::from_values(1, 1, vec![Complex64::new(-0.4, 2.5)]).unwrap();
        let set = synthesize_measurements(&sampling, &graph, &scene).unwrap();
        let fwd = set.get(0, 1, 0).unwrap();
        let rev = set.get(1, 0, 0).unwrap();
        assert_eq!(rev, fwd.conj());
    }

    #[test]
    fn non_edges_and_bad_indices_are_rejected() {
        let (sampling, graph) = pair_problem();
        let scene = ReflectivityImage::from_values(1, 1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let set = synthesize_measurements(&sampling, &graph, &scene).unwrap();
        assert!(set.get(0, 0, 0).is_err());
        assert!(set.get(0, 1, 1).is_err());
    }

    fn bigger_problem(seed: u64) -> MeasurementSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 6;
        let s = 16;
        let n = 12;
        let sampling: Vec<SamplingMatrix> = (0..n)
            .map(|agent| {
                let rows = (0..s)
                    .map(|_| {
                        (0..k)
                            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                            .collect()
                    })
                    .collect();
                SamplingMatrix::from_rows(agent, rows).unwrap()
            })
            .collect();
        let graph = AgentGraph::complete(n).unwrap();
        let scene_vals = (0..k)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let scene = ReflectivityImage::from_values(1, k, scene_vals).unwrap();
        synthesize_measurements(&sampling, &graph, &scene).unwrap()
    }

    #[test]
    fn infinite_snr_is_the_identity() {
        let clean = bigger_problem(3);
        let noisy = add_noise(&clean, f64::INFINITY, 77).unwrap();
        assert_eq!(clean, noisy);
        assert_eq!(noisy.noise_sigma(), None);
    }

    #[test]
    fn zero_db_noise_power_equals_signal_power() {
        let clean = bigger_problem(4);
        let noisy = add_noise(&clean, 0.0, 5).unwrap();
        let sigma = noisy.noise_sigma().unwrap();
        let mean_power = clean.mean_power().unwrap();
        assert!((2.0 * sigma * sigma - mean_power).abs() < 1e-12 * mean_power);
    }

    #[test]
    fn realized_snr_tracks_the_request() {
        // 66 edges x 16 frequencies = 1056 samples; the empirical SNR of the
        // realized noise should land within half a dB of the request.
        let clean = bigger_problem(6);
        let noisy = add_noise(&clean, 20.0, 11).unwrap();
        let signal: f64 = clean.iter().map(|(_, _, _, d)| d.norm_sqr()).sum();
        let noise: f64 = clean
            .iter()
            .zip(noisy.iter())
            .map(|((_, _, _, c), (_, _, _, n))| (n - c).norm_sqr())
            .sum();
        let snr = 10.0 * (signal / noise).log10();
        assert!((snr - 20.0).abs() < 0.5, "empirical snr {snr}");
    }

    #[test]
    fn noise_is_deterministic_per_seed() {
        let clean = bigger_problem(9);
        let a = add_noise(&clean, 30.0, 123).unwrap();
        let b = add_noise(&clean, 30.0, 123).unwrap();
        let c = add_noise(&clean, 30.0, 124).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn noise_on_empty_set_is_rejected() {
        let empty = MeasurementSet::new(4, Vec::new(), Vec::new());
        assert!(matches!(add_noise(&empty, 10.0, 0), Err(Error::Empty(_))));
    }

    proptest! {
        #[test]
        fn global_phase_leaves_data_unchanged(theta in 0.0f64..std::f64::consts::TAU) {
            let (sampling, graph) = pair_problem();
            let base = Complex64::new(0.8, -0.3);
            let scene = ReflectivityImage::from_values(1, 1, vec![base]).unwrap();
            let rotated = ReflectivityImage::from_values(
                1, 1, vec![base * Complex64::from_polar(1.0, theta)]).unwrap();
            let d0 = synthesize_measurements(&sampling, &graph, &scene).unwrap();
            let d1 = synthesize_measurements(&sampling, &graph, &rotated).unwrap();
            let a = d0.get(0, 1, 0).unwrap();
            let b = d1.get(0, 1, 0).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }
}
