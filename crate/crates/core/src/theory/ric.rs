//! Empirical restricted-isometry probe for the lifted measurement map.
//!
//! The pairwise model reads a rank-one matrix `X = x x^H` through the
//! linear map `F(X)_t = scale · a_t^H X b_t`. The probe draws random
//! rank-one inputs `w w^H` and records how far `‖F(w w^H)‖² / ‖w w^H‖_F²`
//! strays from one. The worst observed deviation is a lower bound on the
//! true rank-one isometry constant: sampling finitely many directions can
//! expose a violation but never certify the supremum over all of them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::dot_conj;
use crate::measurements::complex_standard_normal;
use crate::solver::Problem;

/// Lifted measurement map defined by a list of sampling-vector pairs and a
/// global scale.
#[derive(Debug, Clone)]
pub struct PairLiftedOp {
    k: usize,
    pairs: Vec<(Vec<Complex64>, Vec<Complex64>)>,
    scale: f64,
}

impl PairLiftedOp {
    pub fn new(k: usize, pairs: Vec<(Vec<Complex64>, Vec<Complex64>)>) -> Result<Self> {
        if k == 0 || pairs.is_empty() {
            return Err(Error::Empty("lifted operator"));
        }
        for (a, b) in &pairs {
            if a.len() != k || b.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "lifted operator pair",
                    expected: k,
                    got: if a.len() != k { a.len() } else { b.len() },
                });
            }
        }
        Ok(Self { k, pairs, scale: 1.0 })
    }

    /// Collects every stored sampling-row pair of a problem instance.
    pub fn from_problem(problem: &Problem) -> Result<Self> {
        let s_count = problem.num_samples();
        let mut pairs = Vec::new();
        for &(i, j) in problem.graph().edges() {
            for s in 0..s_count {
                pairs.push((
                    problem.sampling()[i].row_complex(s),
                    problem.sampling()[j].row_complex(s),
                ));
            }
        }
        Self::new(problem.num_voxels(), pairs)
    }

    /// The map that reads out every matrix entry against the standard
    /// basis, an exact isometry: `‖F(X)‖ = ‖X‖_F` for every `X`.
    pub fn orthonormal_expansion(k: usize) -> Result<Self> {
        let mut pairs = Vec::with_capacity(k * k);
        for r in 0..k {
            for c in 0..k {
                let mut a = vec![Complex64::new(0.0, 0.0); k];
                let mut b = vec![Complex64::new(0.0, 0.0); k];
                a[r] = Complex64::new(1.0, 0.0);
                b[c] = Complex64::new(1.0, 0.0);
                pairs.push((a, b));
            }
        }
        Self::new(k, pairs)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `F(w w^H)` as a vector of complex readouts.
    pub fn apply_rank1(&self, w: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_input(w)?;
        let (wr, wi): (Vec<f64>, Vec<f64>) = w.iter().map(|z| (z.re, z.im)).unzip();
        Ok(self
            .pairs
            .iter()
            .map(|(a, b)| {
                let (ar, ai): (Vec<f64>, Vec<f64>) = a.iter().map(|z| (z.re, z.im)).unzip();
                let (br, bi): (Vec<f64>, Vec<f64>) = b.iter().map(|z| (z.re, z.im)).unzip();
                let p = dot_conj(&ar, &ai, &wr, &wi);
                let q = dot_conj(&br, &bi, &wr, &wi);
                p * q.conj() * self.scale
            })
            .collect())
    }

    /// `‖F(w w^H)‖² / ‖w w^H‖_F²`, the quantity whose deviation from one
    /// defines the isometry constant. Invariant under `w → c w`.
    pub fn rank1_ratio(&self, w: &[Complex64]) -> Result<f64> {
        self.check_input(w)?;
        let norm_sqr: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::InvalidParameter {
                name: "w",
                reason: "rank-one probe direction must be nonzero".into(),
            });
        }
        let energy: f64 = self.apply_rank1(w)?.iter().map(|m| m.norm_sqr()).sum();
        Ok(energy / (norm_sqr * norm_sqr))
    }

    /// Rescales the map so the mean rank-one ratio over seeded calibration
    /// draws equals one; deviations then measure shape rather than gain.
    pub fn calibrated(mut self, trials: usize, seed: u64) -> Result<Self> {
        let mean = mean_ratio(&self, trials, seed)?;
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "calibration",
                reason: format!("mean rank-one ratio must be positive and finite, got {mean}"),
            });
        }
        self.scale /= mean.sqrt();
        Ok(self)
    }

    fn check_input(&self, w: &[Complex64]) -> Result<()> {
        if w.len() != self.k {
            return Err(Error::DimensionMismatch {
                context: "rank-one probe direction",
                expected: self.k,
                got: w.len(),
            });
        }
        Ok(())
    }
}

fn draw_direction(rng: &mut ChaCha8Rng, k: usize) -> Vec<Complex64> {
    // Spherically uniform direction with a random positive magnitude; the
    // ratio is scale-free, so the magnitude only exercises that fact.
    let raw: Vec<Complex64> = (0..k).map(|_| complex_standard_normal(rng)).collect();
    let norm: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let radius = 0.5 + 1.5 * rng.gen::<f64>();
    raw.into_iter().map(|z| z * (radius / norm.max(1e-300))).collect()
}

fn mean_ratio(op: &PairLiftedOp, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            reason: "at least one rank-one trial is required".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0;
    for _ in 0..trials {
        total += op.rank1_ratio(&draw_direction(&mut rng, op.k()))?;
    }
    Ok(total / trials as f64)
}

/// Result of the Monte Carlo isometry probe.
#[derive(Debug, Clone, Copy)]
pub struct RicEstimate {
    /// Worst observed deviation of the rank-one ratio from one; a lower
    /// bound on the true constant.
    pub delta_hat: f64,
    pub trials: usize,
    pub mean_ratio: f64,
}

/// Probes the map with seeded random rank-one inputs and reports the worst
/// ratio deviation.
pub fn estimate_ric_rank1(op: &PairLiftedOp, trials: usize, seed: u64) -> Result<RicEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            reason: "at least one rank-one trial is required".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut total = 0.0;
    for _ in 0..trials {
        let ratio = op.rank1_ratio(&draw_direction(&mut rng, op.k()))?;
        worst = worst.max((ratio - 1.0).abs());
        total += ratio;
    }
    Ok(RicEstimate { delta_hat: worst, trials, mean_ratio: total / trials as f64 })
}
