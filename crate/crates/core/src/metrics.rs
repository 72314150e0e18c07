//! Recovery and consensus diagnostics.
//!
//! Phaseless measurements determine the scene only up to a global phase, so
//! every distance to the truth is taken after the estimate is rotated by the
//! phase that best matches it.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Phase angle that minimizes `||exp(-i theta) est - truth||`. Returns zero
/// when the two vectors are orthogonal and the minimizer is not unique.
pub fn optimal_phase(est: &[Complex64], truth: &[Complex64]) -> f64 {
    let inner: Complex64 = est.iter().zip(truth).map(|(e, t)| e * t.conj()).sum();
    if inner == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        inner.arg()
    }
}

/// Squared distance to `truth` after optimal phase alignment,
/// `||est||^2 + ||truth||^2 - 2 |<est, truth>|`, clamped at zero against
/// rounding.
pub fn aligned_distance_sqr(est: &[Complex64], truth: &[Complex64]) -> f64 {
    let e2: f64 = est.iter().map(|z| z.norm_sqr()).sum();
    let t2: f64 = truth.iter().map(|z| z.norm_sqr()).sum();
    let inner: Complex64 = est.iter().zip(truth).map(|(e, t)| e * t.conj()).sum();
    (e2 + t2 - 2.0 * inner.norm()).max(0.0)
}

/// Mean squared voxel error after optimal phase alignment.
pub fn mse_aligned(est: &[Complex64], truth: &[Complex64]) -> Result<f64> {
    if est.len() != truth.len() {
        return Err(Error::DimensionMismatch {
            context: "estimate vs truth",
            expected: truth.len(),
            got: est.len(),
        });
    }
    if est.is_empty() {
        return Err(Error::Empty("estimate"));
    }
    let theta = optimal_phase(est, truth);
    let rot = Complex64::from_polar(1.0, -theta);
    let sum: f64 = est.iter().zip(truth).map(|(e, t)| (rot * e - t).norm_sqr()).sum();
    Ok(sum / est.len() as f64)
}

/// Total squared deviation of the agent states from their mean,
/// `sum_i ||x_i - xbar||^2`.
pub fn consensus_error(states: &[Vec<Complex64>]) -> Result<f64> {
    let n = states.len();
    if n == 0 {
        return Err(Error::Empty("agent states"));
    }
    let k = states[0].len();
    for s in states {
        if s.len() != k {
            return Err(Error::DimensionMismatch {
                context: "agent state lengths",
                expected: k,
                got: s.len(),
            });
        }
    }
    let mut mean = vec![Complex64::new(0.0, 0.0); k];
    for s in states {
        for (m, z) in mean.iter_mut().zip(s) {
            *m += z;
        }
    }
    let inv = 1.0 / n as f64;
    for m in &mut mean {
        *m *= inv;
    }
    let total = states
        .iter()
        .map(|s| s.iter().zip(&mean).map(|(z, m)| (z - m).norm_sqr()).sum::<f64>())
        .sum();
    Ok(total)
}

/// First iteration index whose error is at or below `threshold`.
pub fn iterations_to_threshold(
    rows: impl IntoIterator<Item = (usize, f64)>,
    threshold: f64,
) -> Option<usize> {
    rows.into_iter().find(|&(_, err)| err <= threshold).map(|(t, _)| t)
}

/// Least-squares fit of `ln(y)` against `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `ln(y) = intercept + slope * x` over the points with positive `y`.
/// Needs at least two usable points.
pub fn log_linear_fit(points: &[(f64, f64)]) -> Option<LogLinearFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, y)| y > 0.0 && y.is_finite())
        .map(|&(x, y)| (x, y.ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = usable.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = usable.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(LogLinearFit { slope, intercept, r_squared })
}

/// Median of a sample; averages the middle pair for even lengths. NaN
/// entries poison the result, so callers should filter them first.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    })
}

/// Median absolute deviation from the median.
pub fn median_abs_deviation(values: &[f64]) -> Option<f64> {
    let m = median(values)?;
    let deviations: Vec<f64> = values.iter().map(|v| (v - m).abs()).collect();
    median(&deviations)
}
