//! Sampled verification of the curvature and gradient-dominance
//! inequalities for a live objective.
//!
//! Both checks draw points from a ball of radius `0.1 ‖x*‖` around the
//! reference minimizer, inside the iterate set `‖xt‖² ≤ tau`. The
//! curvature check additionally probes a few points along the numerically
//! estimated top curvature direction; uniform draws in a high-dimensional
//! ball almost never align with the extreme eigenvector, and a marginal
//! constant would otherwise pass unchallenged. Because the model only
//! determines the minimizer up to a global phase, distances are taken to
//! the phase-aligned representative of `x*`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measurements::complex_standard_normal;
use crate::metrics::optimal_phase;

use super::real_lift::{from_real_stack, to_real_stack, RealLift};

/// Objective over the real stack, as seen by the sampled checks.
pub trait RealObjective {
    /// Length of the real stack (twice the complex dimension).
    fn dim(&self) -> usize;
    fn objective(&self, xt: &[f64]) -> Result<f64>;
    fn gradient(&self, xt: &[f64]) -> Result<Vec<f64>>;
}

impl RealObjective for RealLift {
    fn dim(&self) -> usize {
        2 * self.k()
    }

    fn objective(&self, xt: &[f64]) -> Result<f64> {
        RealLift::objective(self, xt)
    }

    fn gradient(&self, xt: &[f64]) -> Result<Vec<f64>> {
        RealLift::gradient(self, xt)
    }
}

/// Outcome of a sampled inequality check. The margin is the left side
/// minus the right side; negative margins beyond rounding slack count as
/// violations.
#[derive(Debug, Clone, Copy)]
pub struct CheckOutcome {
    pub samples: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Gradient-dominance constant `1 / (beta² L_f)`.
pub fn pl_constant(beta: f64, l_f: f64) -> Result<f64> {
    for (name, value) in [("beta", beta), ("l_f", l_f)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive and finite, got {value}"),
            });
        }
    }
    Ok(1.0 / (beta * beta * l_f))
}

const BALL_RADIUS_FACTOR: f64 = 0.1;
const CURVATURE_PROBES: [f64; 6] = [1.0, -1.0, 0.5, -0.5, 0.25, -0.25];
const CURVATURE_ITERS: usize = 40;

fn relative_slack(parts: &[f64]) -> f64 {
    1e-12 * (1.0 + parts.iter().map(|v| v.abs()).sum::<f64>())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn draw_normals(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(dim + 1);
    while out.len() < dim {
        let z = complex_standard_normal(rng);
        out.push(z.re);
        out.push(z.im);
    }
    out.truncate(dim);
    out
}

/// Uniform draw from the ball of the given radius around the center.
fn ball_point(rng: &mut ChaCha8Rng, center: &[f64], radius: f64) -> Vec<f64> {
    let dim = center.len();
    let g = draw_normals(rng, dim);
    let len = norm(&g).max(1e-300);
    let r = radius * rng.gen::<f64>().powf(1.0 / dim as f64);
    center.iter().zip(&g).map(|(c, gi)| c + gi * r / len).collect()
}

/// Estimates the top curvature direction at `center` by power iteration on
/// the Hessian, applied through central differences of the gradient.
fn top_curvature_direction(
    f: &dyn RealObjective,
    center: &[f64],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    let dim = center.len();
    let eps = 1e-5 * (1.0 + norm(center));
    let mut v = draw_normals(rng, dim);
    let len = norm(&v).max(1e-300);
    v.iter_mut().for_each(|x| *x /= len);
    for _ in 0..CURVATURE_ITERS {
        let plus: Vec<f64> = center.iter().zip(&v).map(|(c, vi)| c + eps * vi).collect();
        let minus: Vec<f64> = center.iter().zip(&v).map(|(c, vi)| c - eps * vi).collect();
        let gp = f.gradient(&plus)?;
        let gm = f.gradient(&minus)?;
        let hv: Vec<f64> = gp.iter().zip(&gm).map(|(p, m)| (p - m) / (2.0 * eps)).collect();
        let len = norm(&hv);
        if len < 1e-14 {
            break;
        }
        v = hv.into_iter().map(|x| x / len).collect();
    }
    Ok(v)
}

/// Estimates the largest Hessian eigenvalue of `f` at `center`: power
/// iteration for the direction, then a Rayleigh quotient through one more
/// central gradient difference.
pub fn estimate_top_curvature(f: &dyn RealObjective, center: &[f64], seed: u64) -> Result<f64> {
    if center.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            context: "curvature center vs objective",
            expected: f.dim(),
            got: center.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = top_curvature_direction(f, center, &mut rng)?;
    let eps = 1e-5 * (1.0 + norm(center));
    let plus: Vec<f64> = center.iter().zip(&v).map(|(c, vi)| c + eps * vi).collect();
    let minus: Vec<f64> = center.iter().zip(&v).map(|(c, vi)| c - eps * vi).collect();
    let gp = f.gradient(&plus)?;
    let gm = f.gradient(&minus)?;
    let rayleigh = gp
        .iter()
        .zip(&gm)
        .zip(&v)
        .map(|((p, m), vi)| (p - m) / (2.0 * eps) * vi)
        .sum::<f64>();
    Ok(rayleigh)
}

struct BallSampler {
    center: Vec<f64>,
    radius: f64,
    probes: Vec<Vec<f64>>,
    rng: ChaCha8Rng,
}

impl BallSampler {
    fn new(
        f: &dyn RealObjective,
        x_star: &[Complex64],
        tau: f64,
        seed: u64,
        with_probes: bool,
    ) -> Result<Self> {
        let center = to_real_stack(x_star);
        if f.dim() != center.len() {
            return Err(Error::DimensionMismatch {
                context: "objective vs reference point",
                expected: f.dim(),
                got: center.len(),
            });
        }
        let center_norm = norm(&center);
        if center_norm == 0.0 {
            return Err(Error::InvalidParameter {
                name: "x_star",
                reason: "reference minimizer must be nonzero".into(),
            });
        }
        let radius = BALL_RADIUS_FACTOR * center_norm;
        let reach = (center_norm + radius) * (center_norm + radius);
        if !(tau >= reach && tau.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tau",
                reason: format!("iterate set must contain the sample ball: need >= {reach}, got {tau}"),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut probes = Vec::new();
        if with_probes {
            let v = top_curvature_direction(f, &center, &mut rng)?;
            for scale in CURVATURE_PROBES {
                let point: Vec<f64> = center
                    .iter()
                    .zip(&v)
                    .map(|(c, vi)| c + scale * radius * vi)
                    .collect();
                probes.push(point);
            }
        }
        Ok(Self { center, radius, probes, rng })
    }

    fn next_point(&mut self) -> Vec<f64> {
        if let Some(point) = self.probes.pop() {
            point
        } else {
            ball_point(&mut self.rng, &self.center, self.radius)
        }
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {value}"),
        });
    }
    Ok(())
}

/// Samples the curvature inequality
/// `<grad f(z), z - x*>  >=  (1/alpha) ‖grad f(z)‖² + (1/beta) ‖z - x*‖²`
/// near the phase-aligned minimizer.
pub fn check_rc(
    f: &dyn RealObjective,
    x_star: &[Complex64],
    alpha: f64,
    beta: f64,
    samples: usize,
    tau: f64,
    seed: u64,
) -> Result<CheckOutcome> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    if samples == 0 {
        return Err(Error::Empty("curvature check samples"));
    }
    let mut sampler = BallSampler::new(f, x_star, tau, seed, true)?;
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let zt = sampler.next_point();
        let z = from_real_stack(&zt)?;
        let theta = optimal_phase(&z, x_star);
        let rot = Complex64::from_polar(1.0, theta);
        let aligned: Vec<Complex64> = x_star.iter().map(|v| v * rot).collect();
        let at = to_real_stack(&aligned);
        let diff: Vec<f64> = zt.iter().zip(&at).map(|(a, b)| a - b).collect();
        let grad = f.gradient(&zt)?;
        let lhs: f64 = grad.iter().zip(&diff).map(|(g, d)| g * d).sum();
        let grad_sqr: f64 = grad.iter().map(|g| g * g).sum();
        let dist_sqr: f64 = diff.iter().map(|d| d * d).sum();
        let rhs = grad_sqr / alpha + dist_sqr / beta;
        let margin = lhs - rhs;
        if margin < -relative_slack(&[lhs, rhs]) {
            violations += 1;
        }
        worst = worst.min(margin);
    }
    Ok(CheckOutcome { samples, violations, worst_margin: worst })
}

/// Samples the gradient-dominance inequality
/// `(1/2) ‖grad f(z)‖²  >=  mu (f(z) - f*)` near the minimizer.
pub fn check_pl(
    f: &dyn RealObjective,
    x_star: &[Complex64],
    f_star: f64,
    mu: f64,
    samples: usize,
    tau: f64,
    seed: u64,
) -> Result<CheckOutcome> {
    check_positive("mu", mu)?;
    if !f_star.is_finite() {
        return Err(Error::InvalidParameter {
            name: "f_star",
            reason: format!("reference objective value must be finite, got {f_star}"),
        });
    }
    if samples == 0 {
        return Err(Error::Empty("gradient dominance check samples"));
    }
    let mut sampler = BallSampler::new(f, x_star, tau, seed, false)?;
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let zt = sampler.next_point();
        let grad_sqr: f64 = f.gradient(&zt)?.iter().map(|g| g * g).sum();
        let value = f.objective(&zt)?;
        let lhs = 0.5 * grad_sqr;
        let rhs = mu * (value - f_star);
        let margin = lhs - rhs;
        if margin < -relative_slack(&[lhs, value, f_star]) {
            violations += 1;
        }
        worst = worst.min(margin);
    }
    Ok(CheckOutcome { samples, violations, worst_margin: worst })
}
